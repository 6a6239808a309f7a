"""Weighted directed graphs and the structural machinery used by the resistance code.

Nodes are numbered ``1..n`` at the public boundary.  A weight ``a[(i, j)]``
is an edge from node ``i`` to node ``j``; out-degrees are row sums of the
adjacency matrix, so ``L = D - A`` has zero row sums.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from types import MappingProxyType
from typing import Iterable, Mapping, Sequence

import numpy as np

from .errors import InvalidGraphError, InvalidParamError, NodeIndexError, NotConnectedError

Edge = tuple[int, int]


@dataclass(frozen=True, eq=False)
class DiGraph:
    """Immutable weighted digraph on nodes ``1..n``."""

    n: int
    weights: Mapping[Edge, float] = field(default_factory=dict)

    def __post_init__(self):
        if not isinstance(self.n, (int, np.integer)) or self.n < 1:
            raise InvalidGraphError(f"node count must be a positive integer, got {self.n!r}")
        clean = {}
        for (i, j), w in dict(self.weights).items():
            i, j = int(i), int(j)
            if not (1 <= i <= self.n and 1 <= j <= self.n):
                raise InvalidGraphError(f"edge ({i}, {j}) outside nodes 1..{self.n}")
            if i == j:
                raise InvalidGraphError(f"self-loop at node {i}")
            if not (w > 0 and math.isfinite(w)):
                raise InvalidGraphError(f"edge ({i}, {j}) has weight {w!r}; weights must be positive and finite")
            clean[(i, j)] = w
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "weights", MappingProxyType(clean))

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int, float]]) -> "DiGraph":
        weights = {}
        for i, j, w in edges:
            if (i, j) in weights:
                raise InvalidGraphError(f"duplicate edge ({i}, {j})")
            weights[(i, j)] = w
        return cls(n, weights)

    @classmethod
    def from_adjacency(cls, a) -> "DiGraph":
        a = np.asarray(a, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise InvalidGraphError("adjacency matrix must be square")
        if np.any(np.diag(a) != 0):
            raise InvalidGraphError("adjacency matrix has nonzero diagonal")
        if np.any(a < 0):
            raise InvalidGraphError("adjacency matrix has negative entries")
        rows, cols = np.nonzero(a)
        return cls(a.shape[0], {(int(r) + 1, int(c) + 1): float(a[r, c]) for r, c in zip(rows, cols)})

    def adjacency(self) -> np.ndarray:
        a = np.zeros((self.n, self.n))
        for (i, j), w in self.weights.items():
            a[i - 1, j - 1] = float(w)
        return a

    def edges(self) -> list[tuple[int, int, float]]:
        return [(i, j, w) for (i, j), w in sorted(self.weights.items())]

    def successors(self) -> dict[int, list[int]]:
        out = {v: [] for v in range(1, self.n + 1)}
        for i, j in sorted(self.weights):
            out[i].append(j)
        return out

    def is_undirected(self) -> bool:
        return all(self.weights.get((j, i)) == w for (i, j), w in self.weights.items())

    def relabel(self, mapping: Mapping[int, int]) -> "DiGraph":
        """Return the same graph with node ``v`` renamed ``mapping[v]``."""
        if sorted(mapping.values()) != list(range(1, self.n + 1)):
            raise InvalidGraphError("relabel mapping must be a bijection on 1..n")
        return DiGraph(self.n, {(mapping[i], mapping[j]): w for (i, j), w in self.weights.items()})

    def __eq__(self, other):
        if not isinstance(other, DiGraph):
            return NotImplemented
        return self.n == other.n and dict(self.weights) == dict(other.weights)

    def __hash__(self):
        return hash((self.n, frozenset(self.weights.items())))

    def __repr__(self):
        return f"DiGraph(n={self.n}, edges={len(self.weights)})"


def _check_node(g: DiGraph, v: int) -> int:
    if not isinstance(v, (int, np.integer)) or not 1 <= v <= g.n:
        raise NodeIndexError(f"node {v!r} outside 1..{g.n}")
    return int(v)


def laplacian(g: DiGraph) -> np.ndarray:
    a = g.adjacency()
    return np.diag(a.sum(axis=1)) - a


# --------------------------------------------------------------------------
# reachability and strongly connected components


def reachable_from(g: DiGraph, source: int) -> set[int]:
    """Nodes reachable from ``source`` by directed paths (``source`` included)."""
    _check_node(g, source)
    succ = g.successors()
    seen = {source}
    stack = [source]
    while stack:
        u = stack.pop()
        for v in succ[u]:
            if v not in seen:
                seen.add(v)
                stack.append(v)
    return seen


def strongly_connected_components(g: DiGraph) -> list[list[int]]:
    """Tarjan's algorithm, iterative.  Components come out in reverse topological
    order of the condensation (sinks first)."""
    succ = g.successors()
    index: dict[int, int] = {}
    low: dict[int, int] = {}
    on_stack: set[int] = set()
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0

    for root in range(1, g.n + 1):
        if root in index:
            continue
        work = [(root, iter(succ[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack.add(root)
        while work:
            v, it = work[-1]
            advanced = False
            for w in it:
                if w not in index:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack.add(w)
                    work.append((w, iter(succ[w])))
                    advanced = True
                    break
                if w in on_stack:
                    low[v] = min(low[v], index[w])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack.discard(w)
                    comp.append(w)
                    if w == v:
                        break
                comps.append(sorted(comp))
    return comps


def condensation(g: DiGraph) -> tuple[list[list[int]], set[tuple[int, int]]]:
    """Return (components, DAG edges between component indices)."""
    comps = strongly_connected_components(g)
    comp_of = {v: c for c, members in enumerate(comps) for v in members}
    dag = {(comp_of[i], comp_of[j]) for i, j in g.weights if comp_of[i] != comp_of[j]}
    return comps, dag


def sink_components(g: DiGraph) -> list[list[int]]:
    comps, dag = condensation(g)
    has_out = {c for c, _ in dag}
    return [members for c, members in enumerate(comps) if c not in has_out]


def is_connected(g: DiGraph) -> bool:
    """True iff some node is reachable from every node (unique sink in the condensation)."""
    return len(sink_components(g)) == 1


def globally_reachable_nodes(g: DiGraph) -> list[int]:
    sinks = sink_components(g)
    return sinks[0] if len(sinks) == 1 else []


# --------------------------------------------------------------------------
# permutations


@dataclass(frozen=True)
class Permutation:
    """Permutation matrix ``P`` with ``P[k, sigma[k]] = 1`` (0-based indices)."""

    sigma: tuple[int, ...]

    def __post_init__(self):
        sigma = tuple(int(s) for s in self.sigma)
        if sorted(sigma) != list(range(len(sigma))):
            raise InvalidParamError(f"{sigma} is not a bijection on 0..{len(sigma) - 1}")
        object.__setattr__(self, "sigma", sigma)

    @property
    def size(self) -> int:
        return len(self.sigma)

    def matrix(self) -> np.ndarray:
        p = np.zeros((self.size, self.size))
        p[np.arange(self.size), self.sigma] = 1.0
        return p

    def inverse(self) -> "Permutation":
        inv = [0] * self.size
        for k, s in enumerate(self.sigma):
            inv[s] = k
        return Permutation(tuple(inv))


def find_degree_permutation(g: DiGraph) -> Permutation | None:
    """Find a permutation matrix ``P`` with ``A @ P == D`` (diagonal out-degree matrix).

    ``(AP)[i, sigma[k]] = A[i, k]``, so ``AP`` is diagonal exactly when every
    node has at most one out-edge and distinct nodes point at distinct heads,
    with ``sigma[head(i)] = i``.  Unused indices are paired off smallest-first.
    """
    head: dict[int, int] = {}
    for i, j in g.weights:
        if i in head:
            return None
        head[i] = j
    sigma = [-1] * g.n
    for i, j in head.items():
        if sigma[j - 1] != -1:
            return None
        sigma[j - 1] = i - 1
    free_targets = iter(sorted(set(range(g.n)) - set(s for s in sigma if s >= 0)))
    for k in range(g.n):
        if sigma[k] == -1:
            sigma[k] = next(free_targets)
    return Permutation(tuple(sigma))


def symmetrize(g: DiGraph) -> DiGraph:
    """Undirected graph with adjacency ``(A + A^T) / 2``."""
    weights: dict[Edge, float] = {}
    for (i, j), w in g.weights.items():
        weights[(i, j)] = weights.get((i, j), 0) + w / 2
        weights[(j, i)] = weights.get((j, i), 0) + w / 2
    return DiGraph(g.n, weights)


# --------------------------------------------------------------------------
# connection subgraph classification


@dataclass(frozen=True)
class Path:
    """Directed path between the pair; ``nodes`` runs with the edges, upstream endpoint first."""

    nodes: tuple[int, ...]
    kind = "path"


@dataclass(frozen=True)
class Cycle:
    """Directed cycle through the pair; ``nodes`` starts at ``k`` and follows the edges."""

    nodes: tuple[int, ...]
    kind = "cycle"


@dataclass(frozen=True)
class TwoBranchUnitTree:
    """Unit-weight in-tree whose only leaves are ``k`` (branch ``n``) and ``j`` (branch ``m``)."""

    n: int
    m: int
    kind = "tree"

    def __post_init__(self):
        if self.n < 1 or self.m < 1:
            raise InvalidParamError("tree branches must have length >= 1")


@dataclass(frozen=True)
class Other:
    kind = "other"


ConnectionClass = Path | Cycle | TwoBranchUnitTree | Other


def participating_edges(g: DiGraph, k: int, j: int) -> dict[Edge, float]:
    """Edges leaving a node reachable from ``k`` or ``j`` whose head still reaches a
    node reachable from both."""
    rk, rj = reachable_from(g, k), reachable_from(g, j)
    common = rk & rj
    upstream = rk | rj
    reaches_common = {}
    out = {}
    for (u, v), w in g.weights.items():
        if u not in upstream:
            continue
        if v not in reaches_common:
            reaches_common[v] = bool(reachable_from(g, v) & common)
        if reaches_common[v]:
            out[(u, v)] = w
    return out


def _follow(start: int, nxt: Mapping[int, int], limit: int) -> list[int]:
    walk = [start]
    while walk[-1] in nxt and len(walk) <= limit:
        walk.append(nxt[walk[-1]])
    return walk


def classify_connection(g: DiGraph, k: int, j: int) -> ConnectionClass:
    _check_node(g, k)
    _check_node(g, j)
    if k == j:
        raise InvalidParamError("classify_connection needs two distinct nodes")
    if not is_connected(g):
        raise NotConnectedError("graph has no globally reachable node")

    edges = participating_edges(g, k, j)
    nodes = {k, j} | {u for u, _ in edges} | {v for _, v in edges}
    nxt: dict[int, int] = {}
    indeg = {v: 0 for v in nodes}
    for u, v in edges:
        if u in nxt:
            return Other()
        nxt[u] = v
        indeg[v] += 1
    if any(d > 1 for d in indeg.values()):
        return _classify_tree(k, j, edges, nodes)
    # in/out degree <= 1 everywhere: a simple path or a single cycle
    limit = len(nodes)
    if len(edges) == len(nodes):
        walk = _follow(k, nxt, limit)
        if walk[-1] == k and len(walk) == limit + 1 and j in walk:
            return Cycle(tuple(walk[:-1]))
        return Other()
    if len(edges) == len(nodes) - 1:
        sources = [v for v in nodes if indeg[v] == 0]
        if len(sources) == 1 and sources[0] in (k, j):
            walk = _follow(sources[0], nxt, limit)
            other = j if sources[0] == k else k
            if len(walk) == limit and other in walk:
                return Path(tuple(walk[: walk.index(other) + 1]))
    return Other()


def _classify_tree(k: int, j: int, edges: Mapping[Edge, float], nodes: set[int]) -> ConnectionClass:
    nxt: dict[int, int] = {}
    indeg = {v: 0 for v in nodes}
    for (u, v), w in edges.items():
        if u in nxt or w != 1:
            return Other()
        nxt[u] = v
        indeg[v] += 1
    if len(edges) != len(nodes) - 1:
        return Other()
    if {v for v, d in indeg.items() if d == 0} != {k, j}:
        return Other()
    walk_k = _follow(k, nxt, len(nodes))
    walk_j = _follow(j, nxt, len(nodes))
    if len(walk_k) > len(nodes) or len(walk_j) > len(nodes) or walk_k[-1] != walk_j[-1]:
        return Other()
    on_j = set(walk_j)
    meet = next(v for v in walk_k if v in on_j)
    return TwoBranchUnitTree(walk_k.index(meet), walk_j.index(meet))


# --------------------------------------------------------------------------
# constructors for the canonical families


def directed_path(weights: Sequence[float]) -> DiGraph:
    """Path labelled from the root: edge ``i+1 -> i`` carries ``weights[i-1]``."""
    return DiGraph(len(weights) + 1, {(i + 1, i): w for i, w in enumerate(weights, start=1)})


def directed_cycle(weights: Sequence[float]) -> DiGraph:
    """Cycle ``1 -> 2 -> ... -> N -> 1``; edge ``i -> i+1`` carries ``weights[i-1]``."""
    n = len(weights)
    if n < 2:
        raise InvalidGraphError("a cycle needs at least two nodes")
    return DiGraph(n, {(i, i % n + 1): w for i, w in enumerate(weights, start=1)})


def tree_graph(n: int, m: int, stem: int = 0, weights: tuple[float, float] = (1.0, 1.0)) -> tuple[DiGraph, int, int]:
    """Two-branch in-tree with branches of ``n`` and ``m`` edges meeting at node 1.

    Branch one is ``n+1 -> n -> ... -> 2 -> 1`` and branch two is
    ``n+m+1 -> ... -> n+2 -> 1``.  ``stem`` extra edges continue from node 1
    down to a further root.  Returns ``(graph, leaf_k, leaf_j)``; with
    ``n == 0`` or ``m == 0`` the corresponding "leaf" is node 1 itself.
    """
    if n < 0 or m < 0 or n + m < 1 or stem < 0:
        raise InvalidParamError(f"bad tree parameters n={n}, m={m}, stem={stem}")
    w1, w2 = weights
    edges = {}
    for i in range(2, n + 2):
        edges[(i, i - 1)] = w1
    prev = 1
    for i in range(n + 2, n + m + 2):
        edges[(i, prev)] = w2
        prev = i
    total = n + m + 1
    prev = 1
    for s in range(stem):
        total += 1
        edges[(prev, total)] = 1.0
        prev = total
    leaf_k = n + 1
    leaf_j = n + m + 1 if m > 0 else 1
    return DiGraph(total, edges), leaf_k, leaf_j


def star3(edge_resistance_k: float, edge_resistance_j: float) -> DiGraph:
    """Three-node graph with edges ``2 -> 1`` and ``3 -> 1`` given by their edge resistances."""
    return DiGraph(3, {(2, 1): 2.0 / edge_resistance_k, (3, 1): 2.0 / edge_resistance_j})


def random_weights(rng: np.random.Generator, size: int, low: float = 0.1, high: float = 10.0) -> list[float]:
    return [float(w) for w in rng.uniform(low, high, size)]


def random_connected_digraph(n: int, rng: np.random.Generator, edge_prob: float = 0.3,
                             low: float = 0.1, high: float = 10.0) -> DiGraph:
    """Random digraph with a globally reachable node: a random in-arborescence plus
    extra edges kept with probability ``edge_prob``."""
    order = [int(v) + 1 for v in rng.permutation(n)]
    edges: dict[Edge, float] = {}
    for pos in range(1, n):
        parent = order[int(rng.integers(pos))]
        edges[(order[pos], parent)] = float(rng.uniform(low, high))
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j and (i, j) not in edges and rng.random() < edge_prob:
                edges[(i, j)] = float(rng.uniform(low, high))
    return DiGraph(n, edges)


def random_relabel(g: DiGraph, rng: np.random.Generator) -> tuple[DiGraph, dict[int, int]]:
    perm = rng.permutation(g.n)
    mapping = {v: int(perm[v - 1]) + 1 for v in range(1, g.n + 1)}
    return g.relabel(mapping), mapping
