import pathlib
import subprocess
import sys

import pytest

SCRIPTS = pathlib.Path(__file__).resolve().parent.parent / "scripts"


@pytest.mark.parametrize("script, args, expect", [
    ("prop1_probe.py", ["--max-n", "4", "--brute-n", "3"], "spanning cycle"),
    ("star_investigation.py", ["--max-size", "2"], "oracle matches tree formula at [(1, 1)]"),
    ("tree_table.py", ["--max-n", "3", "--excess-m", "2", "--excess-d", "4"], "equals closed form: True"),
])
def test_script_runs(script, args, expect):
    proc = subprocess.run([sys.executable, str(SCRIPTS / script), *args], capture_output=True, text=True, check=False)
    assert proc.returncode == 0, proc.stderr
    assert expect in proc.stdout
