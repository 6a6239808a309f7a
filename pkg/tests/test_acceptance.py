"""The ten acceptance criteria at their stated tolerances.

Each test records a PASS/FAIL line through the ``criterion`` fixture; the
lines are collected in the terminal summary.
"""
import time

import numpy as np
import pytest

from digraph_resistance.closed_forms import (
    excess_decay_ratio,
    tree_excess,
    tree_resistance,
    tree_table,
)
from digraph_resistance.graph import DiGraph, directed_path, random_connected_digraph
from digraph_resistance.lyapunov import graph_x_matrix, resistance_matrix, resistances_from_x, x_from_resistances, x_path_entry
from digraph_resistance.series import two
from digraph_resistance.verify import (
    closed_form_deviation,
    random_instances,
    star_report,
    symmetrization_deviation,
    tree_deviation,
    verify_identities,
)

SEED = 0


@pytest.fixture(scope="module")
def families():
    rng = np.random.default_rng(SEED)
    return random_instances("path", 50, 12, rng), random_instances("cycle", 50, 12, rng, min_nodes=3)


def test_criterion_01_edge_law(criterion):
    worst = max(abs(resistance_matrix(DiGraph(2, {(2, 1): w}))[1, 0] - 2 / w) for w in (0.1, 0.5, 1.0, 2.0, 10.0))
    assert criterion(1, "edge law r = 2/w", worst <= 1e-10, f"max dev {worst:.2e}")


def test_criterion_02_series_parallel(criterion, families):
    start = time.perf_counter()
    paths, cycles = families
    dev_p = closed_form_deviation(paths)
    dev_c = closed_form_deviation(cycles)
    elapsed = time.perf_counter() - start
    worst = max(dev_p["max_deviation"], dev_c["max_deviation"])
    ok = worst <= 1e-9 and elapsed < 10 and min(len(paths), len(cycles)) >= 50
    assert criterion(2, "series/parallel closed forms vs pipeline", ok,
                     f"{dev_p['pairs'] + dev_c['pairs']} pairs, max dev {worst:.2e}, {elapsed:.2f}s")


def test_criterion_03_symmetrization(criterion, families):
    start = time.perf_counter()
    worst = max(symmetrization_deviation(f)["max_deviation"] for f in families)
    elapsed = time.perf_counter() - start
    assert criterion(3, "directed vs symmetrized resistance on paths/cycles", worst <= 1e-9 and elapsed < 10,
                     f"max dev {worst:.2e}, {elapsed:.2f}s")


def test_criterion_04_tree_closed_form(criterion):
    start = time.perf_counter()
    worst = tree_deviation(8)["max_deviation"]
    r_n1 = all(tree_resistance(n, 1) == 2 * (n - 1) + two(2 - n) for n in range(1, 21))
    sym = all(tree_resistance(n, m) == tree_resistance(m, n) for n in range(1, 13) for m in range(1, 13))
    elapsed = time.perf_counter() - start
    ok = worst <= 1e-9 and r_n1 and sym and elapsed < 30
    assert criterion(4, "two-branch tree closed form", ok,
                     f"max dev {worst:.2e}, r(n,1) exact={r_n1}, symmetric={sym}, {elapsed:.2f}s")


def test_criterion_05_recurrence(criterion):
    start = time.perf_counter()
    table = tree_table(8, 9)
    mismatches = [(n, m) for n in range(1, 9) for m in range(1, 10) if table[(n, m)] != tree_resistance(n, m)]
    elapsed = time.perf_counter() - start
    assert criterion(5, "recurrence table equals closed form exactly", not mismatches and elapsed < 5,
                     f"mismatches {mismatches}, {elapsed:.2f}s")


def test_criterion_06_x_r_duality(criterion):
    rng = np.random.default_rng(SEED)
    roundtrip = 0.0
    for _ in range(25):
        x = graph_x_matrix(random_connected_digraph(int(rng.integers(2, 9)), rng))
        roundtrip = max(roundtrip, float(np.max(np.abs(x_from_resistances(resistances_from_x(x)) - x))))
    path = 0.0
    for n in range(2, 11):
        x = graph_x_matrix(directed_path([1.0] * (n - 1)))
        exact = np.array([[float(x_path_entry(n, k, j)) for j in range(1, n + 1)] for k in range(1, n + 1)])
        path = max(path, float(np.max(np.abs(x - exact))))
    assert criterion(6, "X/r duality and unit-path X", max(roundtrip, path) <= 1e-9,
                     f"roundtrip dev {roundtrip:.2e}, path dev {path:.2e}")


def test_criterion_07_identity_sweeps(criterion):
    start = time.perf_counter()
    report = verify_identities()
    elapsed = time.perf_counter() - start
    cases = sum(r["cases"] for r in report.results)
    failed = [r["identity"] for r in report.results if not r["pass"]]
    assert criterion(7, "exact identity, g, h and s sweeps", not failed and elapsed < 60,
                     f"{cases} cases, failed {failed}, {elapsed:.2f}s")


def test_criterion_08_excess_decay(criterion):
    bound = all(tree_excess(m, d + 1) < excess_decay_ratio(m, d) * tree_excess(m, d)
                for m in range(1, 7) for d in range(0, 21))
    monotone = all(tree_excess(m, d + 1) < tree_excess(m, d) for m in range(1, 7) for d in range(0, 20))
    assert criterion(8, "excess decay bound and monotonicity", bound and monotone,
                     f"bound={bound}, monotone={monotone}")


@pytest.mark.xfail(strict=True, reason="resistance is not a metric on digraphs: the triangle inequality fails")
def test_criterion_09_metric_properties(criterion):
    rng = np.random.default_rng(SEED)
    counts = {"symmetric": 0, "zero_diagonal": 0, "positive": 0, "triangle": 0}
    graphs = 25
    for _ in range(graphs):
        n = int(rng.integers(2, 9))
        r = resistance_matrix(random_connected_digraph(n, rng))
        counts["symmetric"] += bool(np.max(np.abs(r - r.T)) <= 1e-9)
        counts["zero_diagonal"] += bool(np.max(np.abs(np.diag(r))) <= 1e-9)
        counts["positive"] += bool(np.all(r[~np.eye(n, dtype=bool)] > 0))
        counts["triangle"] += bool((r[:, :, None] + r[None, :, :] - r[:, None, :]).min() >= -1e-9)
    ok = all(c == graphs for c in counts.values())
    detail = ", ".join(f"{k} {v}/{graphs}" for k, v in counts.items())
    criterion(9, "metric properties of resistance_matrix", ok, detail)
    assert ok, detail


def test_criterion_10_star_investigation(criterion):
    report = star_report(5)
    rows = report.results
    complete = len(rows) == 25 and all(
        {"oracle", "tree_formula", "printed_formula", "matches_tree", "matches_printed"} <= set(r) for r in rows)
    recorded = any("2(n+m) - 2nm/(n+m)" in note for note in report.notes)
    tree_cells = [(r["n"], r["m"]) for r in rows if r["matches_tree"]]
    printed_cells = [(r["n"], r["m"]) for r in rows if r["matches_printed"]]
    assert criterion(10, "star investigation documented", complete and recorded,
                     f"tree matches at {tree_cells}, printed matches at {printed_cells}")
