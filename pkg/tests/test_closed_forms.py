from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from digraph_resistance.closed_forms import (
    cycle_resistance,
    dispatch_resistance,
    edge_resistance,
    excess_decay_ratio,
    path_resistance,
    star3_resistance_fitted,
    star3_resistance_printed,
    star_investigation,
    tree_excess,
    tree_r_n1,
    tree_recurrence,
    tree_resistance,
    tree_table,
)
from digraph_resistance.errors import (
    ClosedFormMismatchError,
    EmptyPathError,
    InvalidParamError,
    MissingPriorError,
    NonpositiveWeightError,
    NotConnectedError,
)
from digraph_resistance.graph import (
    DiGraph,
    directed_cycle,
    directed_path,
    random_connected_digraph,
    random_relabel,
    star3,
    tree_graph,
)
from digraph_resistance.lyapunov import resistance_matrix

weights = st.floats(0.1, 10)


def lyapunov_leaf_resistance(n, m, stem=0):
    g, k, j = tree_graph(n, m, stem=stem)
    return resistance_matrix(g)[k - 1, j - 1]


# edge, path, cycle

@pytest.mark.parametrize("w, r", [(1, 2), (2, 1), (Fraction(1, 3), 6)])
def test_edge_resistance_examples(w, r):
    assert edge_resistance(w) == r


def test_edge_resistance_rejects_nonpositive():
    with pytest.raises(NonpositiveWeightError):
        edge_resistance(0)
    with pytest.raises(NonpositiveWeightError):
        edge_resistance(-1.0)


@pytest.mark.parametrize("w", [0.1, 0.5, 1, 2, 10])
def test_edge_matches_pipeline(w):
    r = resistance_matrix(DiGraph(2, {(2, 1): float(w)}))
    assert r[0, 1] == pytest.approx(2 / w, abs=1e-10)


def test_path_examples():
    assert path_resistance([1, 1, 1]) == 6
    assert path_resistance([4.0]) == pytest.approx(0.5)
    with pytest.raises(EmptyPathError):
        path_resistance([])


def test_cycle_examples():
    assert cycle_resistance([1], [1, 1]) == Fraction(4, 3)
    assert cycle_resistance([0.5], [0.5]) == pytest.approx(2.0)


@given(st.lists(weights, min_size=1, max_size=6), st.lists(weights, min_size=1, max_size=6))
def test_cycle_is_symmetric_and_below_both_arcs(p1, p2):
    r = cycle_resistance(p1, p2)
    assert r == pytest.approx(cycle_resistance(p2, p1))
    assert r <= min(path_resistance(p1), path_resistance(p2)) + 1e-12


@given(st.lists(weights, min_size=1, max_size=11))
def test_path_closed_form_matches_pipeline(ws):
    r = resistance_matrix(directed_path(ws))
    n = len(ws) + 1
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            assert r[a - 1, b - 1] == pytest.approx(path_resistance(ws[a - 1:b - 1]), abs=1e-9)


@given(st.lists(weights, min_size=2, max_size=12))
def test_cycle_closed_form_matches_pipeline(ws):
    r = resistance_matrix(directed_cycle(ws))
    n = len(ws)
    for a in range(1, n + 1):
        for b in range(a + 1, n + 1):
            expected = cycle_resistance(ws[a - 1:b - 1], ws[b - 1:] + ws[:a - 1])
            assert r[a - 1, b - 1] == pytest.approx(expected, abs=1e-9)


# two-branch tree

@pytest.mark.parametrize("n, r", [(1, 2), (2, 3), (5, Fraction(65, 8))])
def test_tree_r_n1_examples(n, r):
    assert tree_r_n1(n) == r


@pytest.mark.parametrize("n, m, r", [(1, 1, 2), (2, 1, 3), (2, 2, 3), (3, 0, 6), (0, 2, 4)])
def test_tree_resistance_examples(n, m, r):
    assert tree_resistance(n, m) == r


@pytest.mark.parametrize("args", [(0, 0), (-1, 2), (1.5, 1)])
def test_tree_resistance_invalid(args):
    with pytest.raises(InvalidParamError):
        tree_resistance(*args)


def test_tree_matches_r_n1_and_is_symmetric():
    for n in range(1, 21):
        assert tree_resistance(n, 1) == tree_r_n1(n) == 2 * (n - 1) + Fraction(2) ** (2 - n)
    for n in range(1, 13):
        for m in range(1, 13):
            assert tree_resistance(n, m) == tree_resistance(m, n)


@pytest.mark.parametrize("n", range(1, 9))
def test_tree_matches_pipeline(n):
    for m in range(1, 9):
        assert lyapunov_leaf_resistance(n, m) == pytest.approx(float(tree_resistance(n, m)), abs=1e-9)


def test_tree_stem_does_not_change_leaf_resistance():
    for n, m in [(1, 1), (2, 3), (4, 2)]:
        for stem in (1, 2, 3):
            assert lyapunov_leaf_resistance(n, m, stem) == pytest.approx(float(tree_resistance(n, m)), abs=1e-9)


def test_recurrence_single_step():
    prior = {(1, 1): tree_resistance(1, 1)}
    assert tree_recurrence(1, 1, prior) == tree_resistance(1, 2)


def test_recurrence_missing_prior():
    with pytest.raises(MissingPriorError):
        tree_recurrence(2, 1, {(1, 1): Fraction(2)})


def test_recurrence_table_equals_closed_form():
    table = tree_table(8, 9)
    for n in range(1, 9):
        for m in range(1, 10):
            assert table[(n, m)] == tree_resistance(n, m)


def test_tree_resistance_is_exact_fraction():
    assert isinstance(tree_resistance(6, 5), Fraction)
    assert tree_resistance(6, 5) == Fraction(1386, 256)


# excess

def test_excess_examples():
    assert tree_excess(1, 0) == 2
    assert tree_excess(1, 1) == 1


def test_excess_definition():
    for m in range(1, 7):
        for d in range(0, 10):
            assert tree_resistance(m + d, m) == 2 * d + tree_excess(m, d)


def test_excess_decay_bound():
    for m in range(1, 7):
        for d in range(0, 21):
            assert tree_excess(m, d + 1) < excess_decay_ratio(m, d) * tree_excess(m, d)
            assert tree_excess(m, d + 1) < tree_excess(m, d)


# star

def test_star_printed_formula_values():
    assert star3_resistance_printed(1, 1) == 3
    assert star3_resistance_printed(2, 1) == Fraction(14, 3)
    with pytest.raises(InvalidParamError):
        star3_resistance_printed(0, 1)


def test_star_oracle_follows_fitted_formula():
    for n in range(1, 6):
        for m in range(1, 6):
            oracle = resistance_matrix(star3(2 * n, 2 * m))[1, 2]
            assert oracle == pytest.approx(float(star3_resistance_fitted(n, m)), abs=1e-9)
    assert resistance_matrix(star3(2, 2))[1, 2] == pytest.approx(2)


def test_star_investigation_rows():
    rows = star_investigation(5)
    assert len(rows) == 25
    assert [(r["n"], r["m"]) for r in rows if r["matches_tree"]] == [(1, 1)]
    assert not any(r["matches_printed"] for r in rows)
    assert all(r["matches_fitted"] for r in rows)


# dispatch

def test_dispatch_examples(rng):
    assert dispatch_resistance(directed_path([1, 1, 1]), 4, 1) == (pytest.approx(6), "path")
    g, k, j = tree_graph(3, 1)
    assert dispatch_resistance(g, k, j) == (pytest.approx(4.5), "tree")
    cyc = directed_cycle([1, 1, 1])
    assert dispatch_resistance(cyc, 1, 2) == (pytest.approx(4 / 3), "cycle")
    dense = DiGraph(4, {(i, j): 1.0 + i + j for i in range(1, 5) for j in range(1, 5) if i != j})
    value, method = dispatch_resistance(dense, 1, 3)
    assert method == "numeric"
    assert value == pytest.approx(resistance_matrix(dense)[0, 2])
    assert dispatch_resistance(cyc, 2, 2) == (0.0, "self")


def test_dispatch_validate_agrees_on_families(rng):
    for _ in range(10):
        n = int(rng.integers(3, 10))
        g, _ = random_relabel(directed_cycle(list(rng.uniform(0.1, 10, n))), rng)
        for k in range(1, n + 1):
            for j in range(1, n + 1):
                if k != j:
                    dispatch_resistance(g, k, j, validate=True)
        g = random_connected_digraph(n, rng)
        dispatch_resistance(g, 1, 2, validate=True)


def test_dispatch_validate_raises_on_mismatch():
    g = directed_path([1.0, 1.0])
    wrong = np.full((3, 3), 5.0)
    with pytest.raises(ClosedFormMismatchError):
        dispatch_resistance(g, 3, 1, validate=True, r=wrong)


def test_dispatch_disconnected():
    with pytest.raises(NotConnectedError):
        dispatch_resistance(DiGraph(3, {(1, 2): 1}), 1, 2)


def test_dispatch_reuses_given_matrix():
    g = DiGraph(3, {(1, 2): 1, (2, 1): 1, (1, 3): 1})
    fake = np.full((3, 3), 7.0)
    assert dispatch_resistance(g, 2, 3, r=fake) == (7.0, "numeric")
