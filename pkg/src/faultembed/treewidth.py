"""Treewidth of F(m, c) and treewidth-based embeddability screening."""
from __future__ import annotations

from dataclasses import dataclass

from .fabric import label_to_index
from .graph import ProblemGraph


@dataclass(frozen=True)
class TreeDecomposition:
    """Bags over fabric ids; ``tree_edges`` use 1-based bag indices."""

    bags: tuple
    tree_edges: tuple

    @property
    def width(self):
        return max(len(b) for b in self.bags) - 1


def treewidth_bounds(m, c):
    if m < 1 or c < 1:
        raise ValueError(f"need m >= 1 and c >= 1, got ({m}, {c})")
    if m == 1:
        return c, c
    return c * m, c * m + c - 1


def build_tree_decomposition(m, c):
    """Width cm+c-1 decomposition sweeping the grid column by column.

    Column ``j`` opens with a head bag (right halves of the whole column
    plus the left half of its top cell) and walks down, trading right halves
    for left halves one cell at a time.  A transition path hanging off the
    head then swaps the column's right halves for those of column ``j+1``,
    one row at a time, ending at the next column's head.  That gives
    ``m`` walk bags per column and ``m`` transition bags per column step,
    2m^2 - m in total, each of size cm + c.

    For m = 1 the result is the width-c path of K_{c,c}: bag ``j`` is the
    left half plus right vertex ``j``.
    """
    if m < 1 or c < 1:
        raise ValueError(f"need m >= 1 and c >= 1, got ({m}, {c})")

    def left(a, b):
        return {label_to_index(a, b, d, m, c) for d in range(1, c + 1)}

    def right(a, b):
        return {label_to_index(a, b, d, m, c) for d in range(c + 1, 2 * c + 1)}

    if m == 1:
        bags = [frozenset(left(1, 1) | {label_to_index(1, 1, c + j, 1, c)}) for j in range(1, c + 1)]
        return TreeDecomposition(tuple(bags), tuple((j, j + 1) for j in range(1, c)))

    bags = []
    edges = []

    def add(bag, parent=None):
        bags.append(frozenset(bag))
        if parent is not None:
            edges.append((parent, len(bags)))
        return len(bags)

    head = None
    for j in range(1, m + 1):
        rights = [right(a, j) for a in range(1, m + 1)]
        column_right = set().union(*rights)
        head_bag = column_right | left(1, j)
        head = add(head_bag, head)
        prev = head
        for i in range(2, m + 1):
            bag = set().union(*rights[i:]) if i < m else set()
            for a in range(1, i):
                bag |= left(a, j)
            bag |= left(i, j) | rights[i - 1]
            prev = add(bag, prev)
        if j == m:
            break
        prev = head
        for i in range(1, m + 1):
            bag = set().union(*rights[i - 1:])
            for a in range(1, i + 1):
                bag |= right(a, j + 1)
            prev = add(bag, prev)
        head = prev
    return TreeDecomposition(tuple(bags), tuple(edges))


def degeneracy(g):
    """Largest minimum degree seen while repeatedly peeling a min-degree vertex."""
    deg = {v: g.degree(v) for v in g.vertices()}
    buckets = {}
    for v, d in deg.items():
        buckets.setdefault(d, set()).add(v)
    removed = set()
    best = 0
    d = 0
    for _ in range(g.n):
        d = max(d - 1, 0)
        while not buckets.get(d):
            d += 1
        v = min(buckets[d])
        buckets[d].discard(v)
        removed.add(v)
        best = max(best, d)
        for u in g.neighbors(v):
            if u in removed:
                continue
            buckets[deg[u]].discard(u)
            deg[u] -= 1
            buckets.setdefault(deg[u], set()).add(u)
    return best


degeneracy_lower_bound = degeneracy


def is_complete(g):
    return g.num_edges() == g.n * (g.n - 1) // 2


def grid_shape(g):
    """``(rows, cols)`` if ``g`` is exactly a planar grid with both sides >= 2, else None."""
    n = g.n
    if n < 4 or g.num_edges() == 0:
        return None
    corners = [v for v in g.vertices() if g.degree(v) == 2]
    if len(corners) != 4 or any(g.degree(v) > 4 or g.degree(v) < 2 for v in g.vertices()):
        return None

    def bfs(src):
        dist = {src: 0}
        frontier = [src]
        while frontier:
            nxt = []
            for x in frontier:
                for y in g.neighbors(x):
                    if y not in dist:
                        dist[y] = dist[x] + 1
                        nxt.append(y)
            frontier = nxt
        return dist

    origin = corners[0]
    d0 = bfs(origin)
    if len(d0) != n:
        return None
    near = sorted(corners[1:], key=lambda v: d0[v])
    width1, height1 = d0[near[0]], d0[near[1]]
    cols, rows = width1 + 1, height1 + 1
    if rows * cols != n or d0[near[2]] != width1 + height1:
        return None
    d1 = bfs(near[0])
    coords = {}
    for v in g.vertices():
        s, t = d0[v] + d1[v] - width1, d0[v] - d1[v] + width1
        if s % 2 or t % 2:
            return None
        i, j = s // 2, t // 2
        if not (0 <= i < rows and 0 <= j < cols) or (i, j) in coords.values():
            return None
        coords[v] = (i, j)
    for u, v in g.edges:
        (a, b), (x, y) = coords[u], coords[v]
        if abs(a - x) + abs(b - y) != 1:
            return None
    if g.num_edges() != rows * (cols - 1) + cols * (rows - 1):
        return None
    return rows, cols


EMBEDDABLE = "EMBEDDABLE"
REJECTED = "REJECTED"
UNKNOWN = "UNKNOWN"


@dataclass(frozen=True)
class ScreeningVerdict:
    status: str
    reason: str = ""
    detail: str = ""

    def render(self):
        return " ".join(x for x in (self.status, self.reason, self.detail) if x) + "\n"


def screen_problem(p: ProblemGraph, m, c):
    """Classify ``p`` against F(m, c) using treewidth arguments.

    Rejections carry a certificate: a degeneracy lower bound reaching cm+c,
    a complete graph on at least cm+c+1 vertices, or an exact grid whose
    shorter side is at least c(m+1).
    """
    limit = c * m + c
    lower = degeneracy(p)
    if lower >= limit:
        return ScreeningVerdict(REJECTED, "cor1", f"degeneracy={lower} >= {limit}")
    if is_complete(p) and p.n >= limit + 1:
        return ScreeningVerdict(REJECTED, "cor2", f"complete n={p.n} >= {limit + 1}")
    shape = grid_shape(p)
    if shape is not None and min(shape) >= c * (m + 1):
        return ScreeningVerdict(REJECTED, "cor3", f"grid {shape[0]}x{shape[1]} side >= {c * (m + 1)}")
    if p.n <= c * m + 1:
        return ScreeningVerdict(EMBEDDABLE, "clique", f"n={p.n} <= {c * m + 1}")
    return ScreeningVerdict(UNKNOWN, "", f"n={p.n} degeneracy={lower} < {limit}")
