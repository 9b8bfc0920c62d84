"""Simple undirected graphs on vertices ``1..n``.

``ProblemGraph`` is the one graph type used across the package: problem
graphs read from QUBO files, small hosts for the brute-force oracles, and
catalog entries of the minors module.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations


@dataclass
class ProblemGraph:
    """Simple undirected graph with optional vertex/edge weights.

    Edges are stored as ``(u, v)`` tuples with ``u < v``.
    """

    n: int
    edges: set = field(default_factory=set)
    vertex_weights: dict = field(default_factory=dict)
    edge_weights: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.n < 0:
            raise ValueError(f"vertex count must be non-negative, got {self.n}")
        normalized = set()
        for u, v in self.edges:
            normalized.add(self._check_edge(u, v))
        self.edges = normalized
        self._adj = None

    def _check_edge(self, u, v):
        if u == v:
            raise ValueError(f"loop at vertex {u}")
        if not (1 <= u <= self.n and 1 <= v <= self.n):
            raise ValueError(f"edge ({u}, {v}) out of range 1..{self.n}")
        return (u, v) if u < v else (v, u)

    def add_edge(self, u, v):
        self.edges.add(self._check_edge(u, v))
        self._adj = None

    @property
    def adjacency(self):
        """``adjacency[v]`` is the neighbor set of ``v`` (index 0 unused)."""
        if self._adj is None:
            adj = [set() for _ in range(self.n + 1)]
            for u, v in self.edges:
                adj[u].add(v)
                adj[v].add(u)
            self._adj = adj
        return self._adj

    def neighbors(self, v):
        return self.adjacency[v]

    def degree(self, v):
        return len(self.adjacency[v])

    def has_edge(self, u, v):
        return (min(u, v), max(u, v)) in self.edges

    def vertices(self):
        return range(1, self.n + 1)

    def num_edges(self):
        return len(self.edges)

    def __eq__(self, other):
        if not isinstance(other, ProblemGraph):
            return NotImplemented
        return self.n == other.n and self.edges == other.edges

    def __repr__(self):
        return f"ProblemGraph(n={self.n}, m={len(self.edges)})"


def complete_graph(n):
    return ProblemGraph(n, set(combinations(range(1, n + 1), 2)))


def complete_bipartite(a, b):
    """K_{a,b} with sides ``1..a`` and ``a+1..a+b``."""
    return ProblemGraph(a + b, {(u, a + v) for u in range(1, a + 1) for v in range(1, b + 1)})


def cycle_graph(n):
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return ProblemGraph(n, {(i, i % n + 1) for i in range(1, n + 1)})


def path_graph(n):
    return ProblemGraph(n, {(i, i + 1) for i in range(1, n)})


def grid_graph(rows, cols):
    """The rows x cols planar grid; vertex ``(i, j)`` is ``i*cols + j + 1``."""
    edges = set()
    for i in range(rows):
        for j in range(cols):
            v = i * cols + j + 1
            if j + 1 < cols:
                edges.add((v, v + 1))
            if i + 1 < rows:
                edges.add((v, v + cols))
    return ProblemGraph(rows * cols, edges)


def relabel(g, mapping):
    """Apply a bijection ``mapping: old -> new`` on ``1..n``."""
    return ProblemGraph(g.n, {(mapping[u], mapping[v]) for u, v in g.edges})


def induced_connected(adj, vertices):
    """True iff ``vertices`` induces a connected subgraph of ``adj``."""
    vs = set(vertices)
    if not vs:
        return False
    start = next(iter(vs))
    seen = {start}
    stack = [start]
    while stack:
        x = stack.pop()
        for y in adj(x):
            if y in vs and y not in seen:
                seen.add(y)
                stack.append(y)
    return len(seen) == len(vs)
