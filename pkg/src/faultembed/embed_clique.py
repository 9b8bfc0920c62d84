"""Clique minor K_{cm+1} in a perfect F(m, c).

The node at diagonal ``i`` and height ``s`` owns the left-half vertex at
height ``s`` of every cell in column ``i`` (a vertical half-chain) and the
right-half vertex at height ``s`` of every cell in row ``i`` (a horizontal
half-chain); the two halves meet in diagonal cell ``(i, i)``.  Node
``(1, c)`` is split into its two halves, which is how the first cell holds
c + 1 nodes.
"""
from __future__ import annotations

from dataclasses import dataclass

from .fabric import index_to_label, label_to_index
from .graphio import EmbeddingRecord

FULL = "full"
VERTICAL = "vertical"
HORIZONTAL = "horizontal"
CELL = "cell"


@dataclass(frozen=True)
class Chain:
    """Vertex set of one logical node plus how it was laid out.

    For ``full`` chains ``diagonal`` is the grid diagonal and
    ``vheight``/``hheight`` the in-half heights of the two halves; ``vertical``
    and ``horizontal`` chains use only the matching height.  ``cell`` chains
    record the cell in ``diagonal`` as a ``(row, col)`` pair.
    """

    vertices: tuple
    kind: str
    diagonal: object = None
    vheight: int = 0
    hheight: int = 0

    def __len__(self):
        return len(self.vertices)


@dataclass(frozen=True)
class CliqueEmbedding:
    m: int
    c: int
    chains: tuple

    @property
    def n(self):
        return len(self.chains)

    def chain_sets(self):
        return [list(ch.vertices) for ch in self.chains]

    def chain_sizes(self):
        return [len(ch) for ch in self.chains]

    def labels(self):
        """Chains as lists of ``(a, b, d)`` labels (independent of m)."""
        return [[index_to_label(v, self.m, self.c) for v in ch.vertices] for ch in self.chains]

    def to_record(self, provenance="canonical"):
        return EmbeddingRecord(self.m, self.c, self.chain_sets(), provenance)


def vertical_half(m, c, col, height, rows=None):
    """Left-half vertices at ``height`` down column ``col``, top to bottom."""
    rows = range(1, m + 1) if rows is None else rows
    return [label_to_index(r, col, height, m, c) for r in rows]


def horizontal_half(m, c, row, height, cols=None):
    """Right-half vertices at ``height`` along row ``row``, left to right."""
    cols = range(1, m + 1) if cols is None else cols
    return [label_to_index(row, b, c + height, m, c) for b in cols]


def full_chain(m, c, diagonal, vheight, hheight):
    verts = vertical_half(m, c, diagonal, vheight) + horizontal_half(m, c, diagonal, hheight)
    return Chain(tuple(verts), FULL, diagonal, vheight, hheight)


def vertical_chain(m, c, diagonal, height):
    return Chain(tuple(vertical_half(m, c, diagonal, height)), VERTICAL, diagonal, height, 0)


def horizontal_chain(m, c, diagonal, height):
    return Chain(tuple(horizontal_half(m, c, diagonal, height)), HORIZONTAL, diagonal, 0, height)


def embed_clique_perfect(m, c):
    """Canonical K_{cm+1} embedding of the perfect F(m, c).

    Node order: ``u_1..u_{c-1}`` are the full chains of diagonal 1 at heights
    ``1..c-1``; ``u_c`` and ``u_{c+1}`` are the vertical and horizontal halves
    of diagonal 1 at height ``c``; diagonal ``i >= 2`` contributes nodes
    ``c(i-1)+2 .. c(i-1)+c+1`` by height.
    """
    if m < 1 or c < 1:
        raise ValueError(f"need m >= 1 and c >= 1, got ({m}, {c})")
    chains = [full_chain(m, c, 1, s, s) for s in range(1, c)]
    chains.append(vertical_chain(m, c, 1, c))
    chains.append(horizontal_chain(m, c, 1, c))
    for i in range(2, m + 1):
        chains += [full_chain(m, c, i, s, s) for s in range(1, c + 1)]
    return CliqueEmbedding(m, c, tuple(chains))


def _is_canonical(e):
    return e.chains == embed_clique_perfect(e.m, e.c).chains


def extend_embedding(e):
    """Grow a canonical (m, c) embedding to the canonical (m+1, c) one.

    Every existing chain keeps its cells and gains the vertices of row and
    column m+1 that continue its halves; diagonal m+1 adds c new nodes.
    """
    if not _is_canonical(e):
        raise ValueError("extend_embedding needs the canonical clique embedding as input")
    m, c, mm = e.m, e.c, e.m + 1
    chains = []
    for ch in e.chains:
        old = [index_to_label(v, m, c) for v in ch.vertices]
        vert = [lbl for lbl in old if lbl[2] <= c]
        horiz = [lbl for lbl in old if lbl[2] > c]
        if vert:
            _, col, d = vert[0]
            vert.append((mm, col, d))
        if horiz:
            row, _, d = horiz[0]
            horiz.append((row, mm, d))
        verts = tuple(label_to_index(a, b, d, mm, c) for a, b, d in vert + horiz)
        chains.append(Chain(verts, ch.kind, ch.diagonal, ch.vheight, ch.hheight))
    chains += [full_chain(mm, c, mm, s, s) for s in range(1, c + 1)]
    return CliqueEmbedding(mm, c, tuple(chains))
