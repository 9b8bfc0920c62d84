"""Maximal-minor catalogs for small hosts and embedding through them.

Desk-scale only: enumeration is guarded at 10 host vertices and subgraph
isomorphism at 16.
"""
from __future__ import annotations

from .graph import ProblemGraph
from .graphio import CatalogEntry

MAX_CATALOG_HOST = 10
MAX_ISO_SIZE = 16


def _refine(adj, colors):
    """Colour refinement to a stable ordered partition (list of cells)."""
    while True:
        sig = {v: (colors[v], tuple(sorted(colors[u] for u in adj[v]))) for v in adj}
        ordered = sorted(set(sig.values()))
        rank = {s: i for i, s in enumerate(ordered)}
        new = {v: rank[sig[v]] for v in adj}
        if len(ordered) == len(set(colors.values())):
            return new
        colors = new


def canonical_form(g):
    """Isomorphism-invariant certificate: ``(n, sorted edge tuple)``.

    Individualisation-refinement explored exhaustively; the certificate is
    the lexicographically smallest relabelled edge list over all leaves.
    """
    if g.n > MAX_ISO_SIZE:
        raise ValueError(f"canonical form guard is {MAX_ISO_SIZE} vertices, got {g.n}")
    adj = {v: g.neighbors(v) for v in g.vertices()}
    best = None

    def search(colors):
        nonlocal best
        colors = _refine(adj, colors)
        cells = {}
        for v, col in colors.items():
            cells.setdefault(col, []).append(v)
        target = next((cells[k] for k in sorted(cells) if len(cells[k]) > 1), None)
        if target is None:
            pos = {v: colors[v] + 1 for v in adj}
            cert = tuple(sorted((min(pos[a], pos[b]), max(pos[a], pos[b])) for a, b in g.edges))
            if best is None or cert < best:
                best = cert
            return
        for v in target:
            nxt = {u: 2 * col for u, col in colors.items()}
            nxt[v] -= 1
            search(nxt)

    if g.n:
        search({v: 0 for v in adj})
    return g.n, best or ()


def subgraph_iso(p, g):
    """Injective edge-preserving map ``p -> g`` as a dict, or None.

    Pattern vertices are visited in BFS order from the highest-degree
    vertex so each new vertex usually has a mapped neighbour, which limits
    its candidates to that neighbour's image's neighbours.  Candidates are
    tried in ascending order, so the answer is deterministic.
    """
    if max(p.n, g.n) > MAX_ISO_SIZE:
        raise ValueError(f"subgraph isomorphism guard is {MAX_ISO_SIZE} vertices")
    if p.n > g.n or p.num_edges() > g.num_edges():
        return None
    order = []
    placed = set()
    for root in sorted(p.vertices(), key=lambda v: (-p.degree(v), v)):
        if root in placed:
            continue
        queue = [root]
        placed.add(root)
        while queue:
            x = queue.pop(0)
            order.append(x)
            for y in sorted(p.neighbors(x), key=lambda v: (-p.degree(v), v)):
                if y not in placed:
                    placed.add(y)
                    queue.append(y)
    mapped = {}
    used = set()
    gdeg = {v: g.degree(v) for v in g.vertices()}

    def candidates(u):
        anchors = [mapped[w] for w in p.neighbors(u) if w in mapped]
        if not anchors:
            return list(g.vertices())
        pool = set(g.neighbors(anchors[0]))
        for a in anchors[1:]:
            pool &= g.neighbors(a)
        return sorted(pool)

    def extend(pos):
        if pos == len(order):
            return True
        u = order[pos]
        du = p.degree(u)
        for x in candidates(u):
            if x in used or gdeg[x] < du:
                continue
            mapped[u] = x
            used.add(x)
            if extend(pos + 1):
                return True
            del mapped[u]
            used.discard(x)
        return False

    return dict(mapped) if extend(0) else None


def contract(g, history, u, v):
    """Contract edge ``(u, v)``: ``v`` merges into ``u``, later ids shift down."""
    if not g.has_edge(u, v):
        raise ValueError(f"({u}, {v}) is not an edge")
    keep, gone = min(u, v), max(u, v)

    def new_id(x):
        x = keep if x == gone else x
        return x - 1 if x > gone else x

    edges = set()
    for a, b in g.edges:
        a2, b2 = new_id(a), new_id(b)
        if a2 != b2:
            edges.add((min(a2, b2), max(a2, b2)))
    hist = {}
    for x, block in history.items():
        y = new_id(x)
        hist[y] = hist.get(y, frozenset()) | block
    return ProblemGraph(g.n - 1, edges), hist


def enumerate_maximal_minors(g):
    """Catalog of maximal minors of ``g`` found level by level over edge contractions.

    Level k holds contractions of the graphs kept at level k-1.  A
    candidate is kept iff it is not a subgraph of anything kept so far;
    within a level, candidates are deduplicated by canonical form and tried
    densest first so no kept graph is a subgraph of a later one.  The
    search stops at the first level that keeps nothing.
    """
    if g.n > MAX_CATALOG_HOST:
        raise ValueError(f"maximal-minor enumeration guard is {MAX_CATALOG_HOST} vertices, got {g.n}")
    root = CatalogEntry(ProblemGraph(g.n, set(g.edges)), {v: frozenset([v]) for v in g.vertices()})
    kept = [root]
    frontier = [root]
    while frontier:
        candidates = {}
        for entry in frontier:
            for u, v in sorted(entry.graph.edges):
                h, hist = contract(entry.graph, entry.history, u, v)
                candidates.setdefault(canonical_form(h), CatalogEntry(h, hist))
        new = []
        for key in sorted(candidates, key=lambda k: (-len(k[1]), k)):
            entry = candidates[key]
            if any(subgraph_iso(entry.graph, other.graph) is not None for other in kept + new):
                continue
            new.append(entry)
        kept += new
        frontier = new
    return sorted(kept, key=lambda e: (-e.graph.n, canonical_form(e.graph)))


def embed_via_catalog(p, g, catalog):
    """Chains in ``g`` for ``p`` through the first catalog entry containing it."""
    for entry in catalog:
        if p.n > entry.graph.n:
            continue
        iso = subgraph_iso(p, entry.graph)
        if iso is not None:
            return [sorted(entry.history[iso[u]]) for u in p.vertices()]
    return None
