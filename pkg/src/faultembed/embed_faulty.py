"""Clique embedding on fabrics with dead qubits.

Both algorithms work on half-chains: the vertical half-chain ``(i, s)`` is the
left-half vertex at height ``s`` in every cell of column ``i``; the
horizontal half-chain ``(i, t)`` is the right-half vertex at height ``t`` in
every cell of row ``i``.  A half-chain is clean when all of its m vertices
are alive; dirty half-chains are dropped whole.

Any clean vertical half ``(i, s)`` and clean horizontal half ``(i, t)`` of the
same diagonal meet through the intra-cell edge of cell ``(i, i)``.  Any
vertical half meets any horizontal half in their crossing cell, so a full
chain is adjacent to every other chain and lone halves of opposite kinds
are adjacent to each other.  Two lone halves of the same kind never are,
which caps lone halves at one per kind.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .embed_clique import (
    CELL,
    Chain,
    CliqueEmbedding,
    full_chain,
    horizontal_chain,
    vertical_chain,
)
from .fabric import flip, map_from_view, subgrid

FALLBACK = "fallback"
GREEDY = "greedy"
CELL_SCAN = "cell-scan"
ALGORITHMS = (FALLBACK, GREEDY)
SINGLE = "single"
FLIP_DROP = "flip-drop"
SCHEMES = (SINGLE, FLIP_DROP)

# corner -> (horizontal flip, vertical flip); list order is the tie-break order
CORNERS = {"UL": (False, False), "UR": (True, False), "LL": (False, True), "LR": (True, True)}


@dataclass(frozen=True)
class CleanTable:
    """``clean_v[i-1]`` / ``clean_h[i-1]``: sorted clean heights of diagonal i."""

    clean_v: tuple
    clean_h: tuple

    def counts(self):
        return [len(s) for s in self.clean_v], [len(s) for s in self.clean_h]


@dataclass(frozen=True)
class FaultyResult:
    embedding: CliqueEmbedding
    algorithm: str
    corner: str = "UL"
    drops: int = 0

    @property
    def n(self):
        return self.embedding.n

    @property
    def provenance(self):
        return f"algorithm={self.algorithm},corner={self.corner},drops={self.drops}"

    def to_record(self):
        return self.embedding.to_record(self.provenance)


def half_chain_status(f):
    grid = f.grid
    c = f.c
    # vertical: left half, all rows of column i; horizontal: right half, all columns of row i
    v_ok = grid[:, :, :c].all(axis=0)
    h_ok = grid[:, :, c:].all(axis=1)
    clean_v = tuple(tuple(int(s) + 1 for s in np.flatnonzero(v_ok[i])) for i in range(f.m))
    clean_h = tuple(tuple(int(t) + 1 for t in np.flatnonzero(h_ok[i])) for i in range(f.m))
    return CleanTable(clean_v, clean_h)


def greedy_count(v_counts, h_counts, cross=False):
    """Clique order reached by greedy pairing from per-diagonal clean counts."""
    if cross:
        total_v, total_h = sum(v_counts), sum(h_counts)
        n_full = min(total_v, total_h)
        spare_v, spare_h = total_v - n_full, total_h - n_full
    else:
        pairs = [min(a, b) for a, b in zip(v_counts, h_counts)]
        n_full = sum(pairs)
        spare_v = sum(v_counts) - n_full
        spare_h = sum(h_counts) - n_full
    if spare_v and spare_h:
        return n_full + 2
    if spare_v or spare_h or n_full:
        return n_full + 1
    return 0


def fallback_count(v_counts, h_counts, m):
    c_o = min(min(v_counts), min(h_counts))
    return c_o * m + 1 if c_o >= 1 else 0


def _assemble(m, c, pairs, lone_v, lone_h, split):
    """Chains from ``pairs`` of ``(diag_v, s, diag_h, t)`` and optional lone halves.

    With ``split`` set and no lone halves, the first pair is broken into its
    two halves.
    """
    chains = []
    if split and pairs and lone_v is None and lone_h is None:
        dv, s, dh, t = pairs[0]
        pairs = pairs[1:]
        lone_v, lone_h = (dv, s), (dh, t)
    for dv, s, dh, t in pairs:
        if dv == dh:
            chains.append(full_chain(m, c, dv, s, t))
        else:
            verts = vertical_chain(m, c, dv, s).vertices + horizontal_chain(m, c, dh, t).vertices
            chains.append(Chain(verts, "full", (dv, dh), s, t))
    if lone_v is not None:
        chains.append(vertical_chain(m, c, *lone_v))
    if lone_h is not None:
        chains.append(horizontal_chain(m, c, *lone_h))
    return CliqueEmbedding(m, c, tuple(chains))


def greedy_embed(f, cross=False):
    """Greedy matching of clean half-chains at the diagonal cells.

    Per diagonal, sorted clean vertical heights pair with sorted clean
    horizontal heights.  Leftovers supply at most one lone half of each
    kind, lowest diagonal and height first.  With ``cross`` set, pairing may
    join halves of different diagonals (they meet in their crossing cell).
    """
    table = half_chain_status(f)
    m, c = f.m, f.c
    pairs = []
    spare_v, spare_h = [], []
    if cross:
        all_v = [(i, s) for i in range(1, m + 1) for s in table.clean_v[i - 1]]
        all_h = [(i, t) for i in range(1, m + 1) for t in table.clean_h[i - 1]]
        k = min(len(all_v), len(all_h))
        pairs = [(dv, s, dh, t) for (dv, s), (dh, t) in zip(all_v[:k], all_h[:k])]
        spare_v, spare_h = all_v[k:], all_h[k:]
    else:
        for i in range(1, m + 1):
            vs, hs = table.clean_v[i - 1], table.clean_h[i - 1]
            k = min(len(vs), len(hs))
            pairs += [(i, s, i, t) for s, t in zip(vs[:k], hs[:k])]
            spare_v += [(i, s) for s in vs[k:]]
            spare_h += [(i, t) for t in hs[k:]]
    emb = _assemble(
        m, c, pairs,
        spare_v[0] if spare_v else None,
        spare_h[0] if spare_h else None,
        split=True,
    )
    return FaultyResult(emb, GREEDY)


def fallback_embed(f):
    """Shrink to the largest complete m x m grid of K_{c_o,c_o} and embed there.

    Column ``b`` keeps its ``c_o`` lowest clean vertical heights and row ``a``
    its ``c_o`` lowest clean horizontal heights; the canonical construction
    then runs on the renumbered grid.
    """
    table = half_chain_status(f)
    m, c = f.m, f.c
    v_counts, h_counts = table.counts()
    c_o = min(min(v_counts), min(h_counts))
    if c_o < 1:
        return FaultyResult(CliqueEmbedding(m, c, ()), FALLBACK)
    pairs = []
    for i in range(1, m + 1):
        vs, hs = table.clean_v[i - 1][:c_o], table.clean_h[i - 1][:c_o]
        pairs += [(i, s, i, t) for s, t in zip(vs, hs)]
    # canonical split node: diagonal 1, top of the renumbered heights
    split = pairs.pop(c_o - 1)
    chains = [full_chain(m, c, *p[:2], p[3]) for p in pairs[: c_o - 1]]
    chains.append(vertical_chain(m, c, split[0], split[1]))
    chains.append(horizontal_chain(m, c, split[2], split[3]))
    chains += [full_chain(m, c, *p[:2], p[3]) for p in pairs[c_o - 1:]]
    return FaultyResult(CliqueEmbedding(m, c, tuple(chains)), FALLBACK)


def _cell_value(left, right):
    if left and right:
        return min(left, right) + 1
    return 1 if (left or right) else 0


def single_cell_best(f):
    """Largest clique found inside one cell; first best cell in row-major order."""
    m, c = f.m, f.c
    grid = f.grid
    best, where = 0, None
    for a in range(1, m + 1):
        for b in range(1, m + 1):
            val = _cell_value(int(grid[a - 1, b - 1, :c].sum()), int(grid[a - 1, b - 1, c:].sum()))
            if val > best:
                best, where = val, (a, b)
    if where is None:
        return FaultyResult(CliqueEmbedding(m, c, ()), CELL_SCAN)
    left, right = f.cell(*where)
    left = [v for v in left if f.alive[v - 1]]
    right = [v for v in right if f.alive[v - 1]]
    if not left or not right:
        chains = [Chain(((left or right)[0],), CELL, where)]
    else:
        k = min(len(left), len(right))
        chains = [Chain((left[j], right[j]), CELL, where) for j in range(k - 1)]
        chains.append(Chain((left[k - 1],), CELL, where))
        chains.append(Chain((right[k - 1],), CELL, where))
    return FaultyResult(CliqueEmbedding(m, c, tuple(chains)), CELL_SCAN)


def _run(f, algorithm, cross):
    if algorithm == GREEDY:
        return greedy_embed(f, cross=cross)
    if algorithm == FALLBACK:
        return fallback_embed(f)
    raise ValueError(f"unknown algorithm {algorithm!r}")


def _count(f, algorithm, cross):
    v_counts, h_counts = half_chain_status(f).counts()
    if algorithm == GREEDY:
        return greedy_count(v_counts, h_counts, cross)
    if algorithm == FALLBACK:
        return fallback_count(v_counts, h_counts, f.m)
    raise ValueError(f"unknown algorithm {algorithm!r}")


def _lift(result, m, corner, k):
    """Re-express a result computed on an oriented subgrid in original ids."""
    h, v = CORNERS[corner]
    c = result.embedding.c
    chains = tuple(
        Chain(tuple(map_from_view(x, m, c, h, v, k) for x in ch.vertices),
              ch.kind, ch.diagonal, ch.vheight, ch.hheight)
        for ch in result.embedding.chains
    )
    return FaultyResult(CliqueEmbedding(m, c, chains), result.algorithm, corner, k)


def attempts(f, algorithm, scheme, cross=False):
    """Yield ``(n, corner, drops)`` for every grid attempt the scheme makes."""
    if scheme == SINGLE:
        yield _count(f, algorithm, cross), "UL", 0
        return
    if scheme != FLIP_DROP:
        raise ValueError(f"unknown scheme {scheme!r}")
    m, c = f.m, f.c
    for corner, (h, v) in CORNERS.items():
        oriented = flip(f, horizontal=h, vertical=v)
        best = 0
        for k in range(m):
            n = _count(subgrid(oriented, k), algorithm, cross)
            yield n, corner, k
            best = max(best, n)
            # the next smaller grid cannot beat c(m-k-1)+1
            if best >= c * (m - k - 1) + 1:
                break


def orchestrate(f, algorithm=GREEDY, scheme=FLIP_DROP, cross=False):
    """Best clique over the scheme's grid attempts and the single-cell scan.

    Ties prefer fewer drops, then corner order UL, UR, LL, LR, and grid
    attempts over the cell scan.
    """
    best = None
    for n, corner, k in attempts(f, algorithm, scheme, cross):
        key = (n, -k, -list(CORNERS).index(corner))
        if best is None or key > best[0]:
            best = (key, corner, k)
    cell = single_cell_best(f)
    (n, _, _), corner, k = best
    if cell.n > n:
        return cell
    h, v = CORNERS[corner]
    view = subgrid(flip(f, horizontal=h, vertical=v), k)
    result = _run(view, algorithm, cross)
    return _lift(result, f.m, corner, k)
