"""The hardware graph F(m, c): an m x m grid of K_{c,c} unit cells.

Vertex ``v(a, b, d)`` sits in cell row ``a``, cell column ``b`` (both 1-based,
cell (1, 1) upper left) at in-cell position ``d``.  Positions ``1..c`` form the
left half of the cell and couple vertically to the same position in the cells
above and below; positions ``c+1..2c`` form the right half and couple
horizontally to the cells left and right.  Linear ids are
``2cm(a-1) + 2c(b-1) + d`` and run over ``1..2cm^2``.

Adjacency is never stored: it is computed from the labels, and faults are a
boolean aliveness mask over the structurally perfect graph.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .graph import ProblemGraph


def label_to_index(a, b, d, m, c):
    """Linear id of ``v(a, b, d)`` in F(m, c)."""
    if not (1 <= a <= m and 1 <= b <= m and 1 <= d <= 2 * c):
        raise ValueError(f"label ({a}, {b}, {d}) out of range for F({m}, {c})")
    return 2 * c * m * (a - 1) + 2 * c * (b - 1) + d


def index_to_label(n, m, c):
    """Inverse of :func:`label_to_index`, returning ``(a, b, d)``."""
    if not 1 <= n <= 2 * c * m * m:
        raise ValueError(f"vertex {n} out of range 1..{2 * c * m * m}")
    a = -(-n // (2 * c * m))
    b = -(-(n - 2 * c * m * (a - 1)) // (2 * c))
    d = n % (2 * c)
    if d == 0:
        d = 2 * c
    return a, b, d


def fault_count(rate, size):
    """Number of dead vertices for a fault rate in [0, 1] (round half up)."""
    return int(math.floor(rate * size + 0.5))


@dataclass(frozen=True, eq=False)
class Fabric:
    """F(m, c) with an aliveness mask; immutable.

    ``alive[n - 1]`` is the state of vertex ``n``.
    """

    m: int
    c: int
    alive: np.ndarray

    def __post_init__(self):
        if self.m < 1 or self.c < 1:
            raise ValueError(f"F(m, c) needs m >= 1 and c >= 1, got ({self.m}, {self.c})")
        alive = np.array(self.alive, dtype=bool).reshape(-1)
        if alive.size != self.size:
            raise ValueError(f"alive mask has {alive.size} entries, expected {self.size}")
        alive.setflags(write=False)
        object.__setattr__(self, "alive", alive)

    @property
    def size(self):
        return 2 * self.c * self.m * self.m

    @property
    def grid(self):
        """Aliveness as an ``(m, m, 2c)`` array indexed ``[a-1, b-1, d-1]``."""
        return self.alive.reshape(self.m, self.m, 2 * self.c)

    def __eq__(self, other):
        if not isinstance(other, Fabric):
            return NotImplemented
        return (self.m, self.c) == (other.m, other.c) and np.array_equal(self.alive, other.alive)

    def __hash__(self):
        return hash((self.m, self.c, self.alive.tobytes()))

    def __repr__(self):
        return f"Fabric(m={self.m}, c={self.c}, dead={self.dead_count})"

    def index(self, a, b, d):
        return label_to_index(a, b, d, self.m, self.c)

    def label(self, n):
        return index_to_label(n, self.m, self.c)

    def is_alive(self, n):
        self._check(n)
        return bool(self.alive[n - 1])

    @property
    def alive_count(self):
        return int(self.alive.sum())

    @property
    def dead_count(self):
        return self.size - self.alive_count

    @property
    def is_perfect(self):
        return bool(self.alive.all())

    def dead_vertices(self):
        return [int(i) + 1 for i in np.flatnonzero(~self.alive)]

    def _check(self, n):
        if not 1 <= n <= self.size:
            raise ValueError(f"vertex {n} out of range 1..{self.size}")

    def structural_neighbors(self, n):
        """Neighbors of ``n`` in the perfect F(m, c), ignoring faults."""
        m, c = self.m, self.c
        a, b, d = index_to_label(n, m, c)
        base = n - d
        if d <= c:
            out = [base + c + j for j in range(1, c + 1)]
            if a > 1:
                out.append(n - 2 * c * m)
            if a < m:
                out.append(n + 2 * c * m)
        else:
            out = [base + j for j in range(1, c + 1)]
            if b > 1:
                out.append(n - 2 * c)
            if b < m:
                out.append(n + 2 * c)
        return out

    def neighbors(self, n):
        """Alive neighbors of an alive vertex; empty for a dead one."""
        self._check(n)
        if not self.alive[n - 1]:
            return set()
        return {u for u in self.structural_neighbors(n) if self.alive[u - 1]}

    def edges(self):
        """Iterate alive edges ``(u, v)`` with ``u < v``."""
        for n in range(1, self.size + 1):
            if not self.alive[n - 1]:
                continue
            for u in self.structural_neighbors(n):
                if u > n and self.alive[u - 1]:
                    yield n, u

    def edge_count(self):
        return sum(1 for _ in self.edges())

    def to_graph(self):
        """The alive fabric as a :class:`ProblemGraph` (dead vertices isolated)."""
        return ProblemGraph(self.size, set(self.edges()))

    def cell(self, a, b):
        """Linear ids of cell ``(a, b)``: ``(left, right)`` lists in height order."""
        first = self.index(a, b, 1)
        c = self.c
        return list(range(first, first + c)), list(range(first + c, first + 2 * c))


def build_fabric(m, c):
    """The fully alive F(m, c)."""
    if m < 1 or c < 1:
        raise ValueError(f"F(m, c) needs m >= 1 and c >= 1, got ({m}, {c})")
    return Fabric(m, c, np.ones(2 * c * m * m, dtype=bool))


def perfect_edge_count(m, c):
    return m * m * c * c + 2 * c * m * (m - 1)


def apply_faults(f, dead=None, *, rate=None, seed=None):
    """Return ``f`` with extra dead vertices.

    Either pass an explicit iterable ``dead`` of linear ids, or ``rate`` in
    [0, 1] together with ``seed``: rate mode kills ``round(rate * 2cm^2)``
    distinct vertices drawn uniformly without replacement from a seeded
    generator.  Faults only accumulate; dead vertices stay dead.
    """
    alive = f.alive.copy()
    if rate is not None:
        if dead is not None:
            raise ValueError("give either an explicit dead list or a rate, not both")
        if not 0.0 <= rate <= 1.0:
            raise ValueError(f"fault rate must be in [0, 1], got {rate}")
        rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
        k = fault_count(rate, f.size)
        alive[rng.choice(f.size, size=k, replace=False)] = False
    else:
        for n in dead or ():
            if not 1 <= n <= f.size:
                raise ValueError(f"dead vertex {n} out of range 1..{f.size}")
            alive[n - 1] = False
    return Fabric(f.m, f.c, alive)


def flip(f, horizontal=False, vertical=False):
    """Grid automorphism mirroring cell columns and/or cell rows.

    ``horizontal`` maps ``(a, b, d) -> (a, m+1-b, d)``; ``vertical`` maps
    ``(a, b, d) -> (m+1-a, b, d)``.
    """
    g = f.grid
    if vertical:
        g = g[::-1, :, :]
    if horizontal:
        g = g[:, ::-1, :]
    return Fabric(f.m, f.c, np.ascontiguousarray(g).reshape(-1))


def subgrid(f, k):
    """The (m-k) x (m-k) fabric of cells with row > k and column > k."""
    if not 0 <= k < f.m:
        raise ValueError(f"drop count k must be in [0, {f.m - 1}], got {k}")
    g = f.grid[k:, k:, :]
    return Fabric(f.m - k, f.c, np.ascontiguousarray(g).reshape(-1))


def map_from_view(n, m, c, horizontal=False, vertical=False, k=0):
    """Map vertex ``n`` of ``subgrid(flip(f, h, v), k)`` back to ``f``'s ids."""
    mm = m - k
    a, b, d = index_to_label(n, mm, c)
    a, b = a + k, b + k
    if vertical:
        a = m + 1 - a
    if horizontal:
        b = m + 1 - b
    return label_to_index(a, b, d, m, c)
