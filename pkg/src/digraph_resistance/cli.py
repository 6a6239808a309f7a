"""Command-line front-end.

Exit codes: 0 success, 1 failed verification, 2 bad input or parameters,
3 disconnected graph, 4 numerical failure.
"""
from __future__ import annotations

import argparse
import sys
from dataclasses import fields

from .closed_forms import dispatch_resistance
from .edgelist import read_edge_list
from .errors import (
    EdgeListParseError,
    InvalidParamError,
    NodeIndexError,
    NotConnectedError,
    OutOfValidityRangeError,
    SingularSystemError,
)
from .graph import is_connected
from .lyapunov import DEFAULT_TOL, lyapunov_residual, pipeline
from .report import Report
from .series import IdentityId, SweepBounds
from .verify import star_report, tree_channels, verify_closed_forms, verify_identities

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_DISCONNECTED, EXIT_NUMERIC = 0, 1, 2, 3, 4


def cmd_resistance(path, pair=None, tol: float = DEFAULT_TOL, method: str = "kron") -> Report:
    g = read_edge_list(path)
    if not is_connected(g):
        raise NotConnectedError(f"{path}: graph has no globally reachable node")
    stages = pipeline(g, tol=tol, method=method)
    r = stages["R"]
    residual = lyapunov_residual(stages["Lbar"], stages["Sigma"]) if g.n > 1 else 0.0
    if pair is not None:
        k, j = pair
        for v in pair:
            if not 1 <= v <= g.n:
                raise NodeIndexError(f"node {v} outside 1..{g.n}")
        pairs = [(k, j)]
    else:
        pairs = [(k, j) for k in range(1, g.n + 1) for j in range(k + 1, g.n + 1)]
    results = []
    for k, j in pairs:
        value, tag = dispatch_resistance(g, k, j, tol=tol, r=r)
        results.append({"k": k, "j": j, "value": value, "method": tag,
                        "lyapunov_value": float(r[k - 1, j - 1]),
                        "deviation": abs(value - float(r[k - 1, j - 1])),
                        "residual": residual})
    inputs = {"file": str(path), "nodes": g.n, "edges": len(g.weights),
              "pair": list(pair) if pair else None, "tol": tol, "solver": method}
    return Report("resistance", inputs, results)


def _build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="digraph-resistance",
                                description="Effective resistance on directed graphs.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, tol=True):
        sp.add_argument("--format", choices=("json", "csv"), default="json")
        if tol:
            sp.add_argument("--tol", type=float, default=DEFAULT_TOL)

    sp = sub.add_parser("resistance", help="resistances of an edge-list graph")
    sp.add_argument("file")
    sp.add_argument("--pair", nargs=2, type=int, metavar=("K", "J"))
    sp.add_argument("--method", choices=("kron", "schur"), default="kron", help="Lyapunov solver")
    common(sp)

    sp = sub.add_parser("verify-closed-forms", help="closed forms vs Lyapunov pipeline")
    sp.add_argument("--max-n", type=int, default=8)
    sp.add_argument("--max-cycle", type=int, default=12)
    sp.add_argument("--instances", type=int, default=50)
    sp.add_argument("--seed", type=int, default=0)
    common(sp)

    sp = sub.add_parser("verify-identities", help="exact identity sweeps")
    sp.add_argument("--id", action="append", dest="ids", metavar="ID",
                    choices=[i.value for i in IdentityId] + ["g", "h", "s"])
    defaults = SweepBounds()
    for f in fields(SweepBounds):
        sp.add_argument("--" + f.name.replace("_", "-"), type=int, default=getattr(defaults, f.name))
    sp.add_argument("--perturb", action="append", default=[], metavar="ID",
                    help="shift the right-hand side of ID by one (harness self-test)")
    common(sp, tol=False)

    sp = sub.add_parser("tree", help="two-branch tree resistance on every channel")
    sp.add_argument("n", type=int)
    sp.add_argument("m", type=int)
    common(sp)

    sp = sub.add_parser("star", help="3-node star against the tree and star formulas")
    sp.add_argument("--max-size", type=int, default=5)
    common(sp)
    return p


def _run(args) -> Report:
    if args.command == "resistance":
        return cmd_resistance(args.file, tuple(args.pair) if args.pair else None, args.tol, args.method)
    if args.command == "verify-closed-forms":
        return verify_closed_forms(args.max_n, args.max_cycle, args.instances, args.seed, args.tol)
    if args.command == "verify-identities":
        bounds = SweepBounds(**{f.name: getattr(args, f.name) for f in fields(SweepBounds)})
        return verify_identities(args.ids, bounds, args.perturb)
    if args.command == "tree":
        if args.n < 0 or args.m < 0 or args.n + args.m < 1:
            raise InvalidParamError("tree needs n, m >= 0 and n + m >= 1")
        return tree_channels(args.n, args.m, args.tol)
    if args.command == "star":
        if args.max_size < 1:
            raise InvalidParamError("--max-size must be positive")
        return star_report(args.max_size, args.tol)
    raise AssertionError(args.command)


def main(argv=None) -> int:
    args = _build_parser().parse_args(argv)
    try:
        report = _run(args)
    except NotConnectedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DISCONNECTED
    except (SingularSystemError, ArithmeticError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (EdgeListParseError, InvalidParamError, NodeIndexError, OutOfValidityRangeError,
            ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    sys.stdout.write(report.render(args.format))
    if args.format == "json":
        sys.stdout.write("\n")
    if not report.passed:
        failed = [r for r in report.results if r.get("pass") is False]
        print(f"{report.command}: {len(failed)} failing record(s)", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
