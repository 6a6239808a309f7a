"""Which connected digraphs admit a permutation P with D = AP?

Part 1 brute-forces every permutation matrix on every unit-weight digraph
with N <= 4 and checks find_degree_permutation against it.  Part 2
enumerates every digraph with out-degree <= 1 (the only candidates) for
N <= max_n, keeps the connected ones that admit P, and reports their shape.
"""
import argparse
import itertools
from collections import Counter

import numpy as np

from digraph_resistance.graph import (
    DiGraph,
    classify_connection,
    find_degree_permutation,
    is_connected,
    symmetrize,
)
from digraph_resistance.lyapunov import resistance_matrix


def brute_force_admits(g):
    a = g.adjacency()
    d = np.diag(a.sum(axis=1))
    for perm in itertools.permutations(range(g.n)):
        p = np.zeros((g.n, g.n))
        p[np.arange(g.n), perm] = 1
        if np.array_equal(a @ p, d):
            return True
    return False


def check_characterization(max_n):
    checked = 0
    for n in range(1, max_n + 1):
        pairs = [(i, j) for i in range(1, n + 1) for j in range(1, n + 1) if i != j]
        for mask in range(1 << len(pairs)):
            g = DiGraph(n, {e: 1.0 for b, e in enumerate(pairs) if mask >> b & 1})
            assert (find_degree_permutation(g) is not None) == brute_force_admits(g), g.edges()
            checked += 1
    return checked


def shape(g):
    if g.n == 1:
        return "single node"
    ends = sorted(v for v in range(1, g.n + 1) if not any(u == v for u, _ in g.weights))
    if not ends:
        return "spanning cycle"
    sources = [v for v in range(1, g.n + 1) if not any(h == v for _, h in g.weights)]
    if len(sources) == 1 and classify_connection(g, sources[0], ends[0]).kind == "path":
        return "spanning path"
    return "other"


def main():
    parser = argparse.ArgumentParser()
    parser.add_argument("--max-n", type=int, default=6)
    parser.add_argument("--brute-n", type=int, default=4)
    args = parser.parse_args()

    print(f"characterization matches brute force on {check_characterization(args.brute_n)} graphs")
    for n in range(1, args.max_n + 1):
        shapes, worst = Counter(), 0.0
        for heads in itertools.product(range(n + 1), repeat=n):
            edges = {(i + 1, h): 1.0 for i, h in enumerate(heads) if h and h != i + 1}
            if any(h == i + 1 for i, h in enumerate(heads)):
                continue
            g = DiGraph(n, edges)
            if not is_connected(g) or find_degree_permutation(g) is None:
                continue
            shapes[shape(g)] += 1
            if n > 1:
                worst = max(worst, float(np.max(np.abs(resistance_matrix(g) - resistance_matrix(symmetrize(g))))))
        print(f"N={n}: {dict(shapes)}  max |R - R_sym| = {worst:.2e}")


if __name__ == "__main__":
    main()
