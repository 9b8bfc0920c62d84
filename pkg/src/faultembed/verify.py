"""Validators and brute-force oracles.

Everything here recomputes from raw adjacency and never trusts the chain
kinds or provenance attached by the producers.  The oracles are exhaustive
and guarded to tiny inputs.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from .fabric import Fabric
from .graph import ProblemGraph, induced_connected

MAX_ORACLE_HOST = 12


@dataclass
class VerificationReport:
    violations: list = field(default_factory=list)
    width: int = None

    @property
    def passed(self):
        return not self.violations

    def rules(self):
        return [rule for rule, _ in self.violations]

    def add(self, rule, witness):
        if rule not in self.rules():
            self.violations.append((rule, witness))

    def render(self, summary=""):
        if self.passed:
            parts = ["PASS"]
            if self.width is not None:
                parts.append(f"width={self.width}")
            if summary:
                parts.append(summary)
            return " ".join(parts) + "\n"
        return "".join(f"FAIL {rule} {witness}\n" for rule, witness in self.violations)


class _Host:
    """Uniform read-only view of a Fabric or a ProblemGraph."""

    def __init__(self, host):
        self.host = host
        if isinstance(host, Fabric):
            self.size = host.size
            self.alive = lambda v: bool(host.alive[v - 1])
            self.neighbors = host.neighbors
        elif isinstance(host, ProblemGraph):
            self.size = host.n
            self.alive = lambda v: True
            self.neighbors = host.neighbors
        else:
            raise TypeError(f"unsupported host type {type(host).__name__}")

    def check(self, v):
        if not 1 <= v <= self.size:
            raise ValueError(f"vertex {v} out of range 1..{self.size}")

    def edges(self):
        if isinstance(self.host, Fabric):
            yield from self.host.edges()
        else:
            yield from self.host.edges


def verify_minor_embedding(host, p, chains):
    """Check ``chains`` (``chains[k-1]`` for node ``k``) is a minor model of ``p``."""
    h = _Host(host)
    if len(chains) != p.n:
        raise ValueError(f"{len(chains)} chains for a problem graph with {p.n} vertices")
    report = VerificationReport()
    owner = {}
    for k, chain in enumerate(chains, start=1):
        for v in chain:
            h.check(v)
            if not h.alive(v):
                report.add("aliveness", f"node={k} vertex={v}")
            if v in owner and owner[v] != k:
                report.add("disjointness", f"nodes={owner[v]},{k} vertex={v}")
            owner.setdefault(v, k)
    for k, chain in enumerate(chains, start=1):
        if not chain:
            report.add("connectivity", f"node={k} empty")
            continue
        live = [v for v in chain if h.alive(v)]
        if len(live) != len(set(chain)) or not induced_connected(h.neighbors, live):
            report.add("connectivity", f"node={k}")
    covered = set()
    for u, v in h.edges():
        if not (h.alive(u) and h.alive(v)):
            continue
        a, b = owner.get(u), owner.get(v)
        if a is not None and b is not None and a != b:
            covered.add((min(a, b), max(a, b)))
    for edge in sorted(p.edges):
        if edge not in covered:
            report.add("edge-coverage", f"edge={edge[0]},{edge[1]}")
            break
    return report


def verify_subgraph_embedding(host, p, mapping):
    """Check an injective, edge-preserving vertex map; ``mapping[u]`` for u in 1..n."""
    h = _Host(host)
    image = {}
    report = VerificationReport()
    for u in p.vertices():
        if u not in mapping:
            raise ValueError(f"map is not total: vertex {u} unmapped")
        v = mapping[u]
        h.check(v)
        if not h.alive(v):
            report.add("aliveness", f"vertex={u}->{v}")
        if v in image:
            report.add("disjointness", f"vertices={image[v]},{u}->{v}")
        image[v] = u
    for a, b in sorted(p.edges):
        if mapping[b] not in h.neighbors(mapping[a]):
            report.add("edge-coverage", f"edge={a},{b}")
            break
    return report


def _check_tree(nbags, tree_edges):
    if nbags == 0:
        raise ValueError("decomposition has no bags")
    if len(tree_edges) != nbags - 1:
        raise ValueError(f"tree on {nbags} nodes needs {nbags - 1} edges, got {len(tree_edges)}")
    adj = [[] for _ in range(nbags + 1)]
    for i, j in tree_edges:
        if not (1 <= i <= nbags and 1 <= j <= nbags) or i == j:
            raise ValueError(f"bad tree edge ({i}, {j})")
        adj[i].append(j)
        adj[j].append(i)
    if not induced_connected(lambda x: adj[x], range(1, nbags + 1)):
        raise ValueError("decomposition tree is disconnected")
    return adj


def verify_tree_decomposition(g, bags, tree_edges):
    """Check the three tree-decomposition clauses; bag ids in ``tree_edges`` are 1-based."""
    h = _Host(g)
    adj = _check_tree(len(bags), tree_edges)
    report = VerificationReport(width=max(len(b) for b in bags) - 1)
    holders = {}
    for i, bag in enumerate(bags, start=1):
        for v in bag:
            h.check(v)
            holders.setdefault(v, []).append(i)
    for v in range(1, h.size + 1):
        if h.alive(v) and v not in holders:
            report.add("bag-cover-vertex", f"vertex={v}")
            break
    bagsets = [frozenset(b) for b in bags]
    for u, v in h.edges():
        if not any(v in bagsets[i - 1] for i in holders.get(u, ())):
            report.add("bag-cover-edge", f"edge={u},{v}")
            break
    for v, where in sorted(holders.items()):
        if not induced_connected(lambda x: adj[x], where):
            report.add("bag-path-connectivity", f"vertex={v}")
            break
    return report


def _subgraph_map(p_adj, p_n, q_adj, q_n):
    """Backtracking injective edge-preserving map from pattern into host."""
    order = sorted(range(p_n), key=lambda u: -len(p_adj[u]))
    assign = {}
    used = set()

    def extend(pos):
        if pos == len(order):
            return True
        u = order[pos]
        for x in range(q_n):
            if x in used or len(q_adj[x]) < len(p_adj[u]):
                continue
            if all(assign[w] in q_adj[x] for w in p_adj[u] if w in assign):
                assign[u] = x
                used.add(x)
                if extend(pos + 1):
                    return True
                del assign[u]
                used.discard(x)
        return False

    return dict(assign) if extend(0) else None


def is_minor_bruteforce(h, g):
    """Exhaustively decide whether ``h`` is a minor of host ``g``.

    Every minor of ``g`` is a subgraph of some quotient of ``g`` by a
    partition into connected blocks, so the search walks all such partitions
    by merging adjacent blocks.  Returns ``(True, chains)`` with chains as
    host-vertex lists for ``h``'s vertices ``1..n``, or ``(False, None)``.
    """
    if isinstance(g, Fabric):
        verts = [v for v in range(1, g.size + 1) if g.alive[v - 1]]
        nbrs = g.neighbors
    else:
        verts = list(g.vertices())
        nbrs = g.neighbors
    if len(verts) > MAX_ORACLE_HOST:
        raise ValueError(f"oracle host has {len(verts)} vertices; the guard is {MAX_ORACLE_HOST}")
    if h.n == 0:
        return True, []
    if h.n > len(verts):
        return False, None
    index = {v: i for i, v in enumerate(verts)}
    host_edges = set()
    for v in verts:
        for u in nbrs(v):
            if u in index and index[u] > index[v]:
                host_edges.add((index[v], index[u]))
    p_adj = [set() for _ in range(h.n)]
    for a, b in h.edges:
        p_adj[a - 1].add(b - 1)
        p_adj[b - 1].add(a - 1)
    p_degrees = sorted((len(s) for s in p_adj), reverse=True)
    need_edges = h.num_edges()

    start = tuple(frozenset([i]) for i in range(len(verts)))
    seen = {frozenset(start)}
    stack = [start]
    while stack:
        blocks = stack.pop()
        where = {}
        for bi, block in enumerate(blocks):
            for x in block:
                where[x] = bi
        q_edges = {(min(where[a], where[b]), max(where[a], where[b]))
                   for a, b in host_edges if where[a] != where[b]}
        if len(q_edges) < need_edges or len(blocks) < h.n:
            continue
        q_adj = [set() for _ in blocks]
        for a, b in q_edges:
            q_adj[a].add(b)
            q_adj[b].add(a)
        q_degrees = sorted((len(s) for s in q_adj), reverse=True)
        if all(pd <= qd for pd, qd in zip(p_degrees, q_degrees)):
            found = _subgraph_map(p_adj, h.n, q_adj, len(blocks))
            if found is not None:
                chains = [sorted(verts[x] for x in blocks[found[u]]) for u in range(h.n)]
                return True, chains
        if len(blocks) == h.n:
            continue
        for a, b in sorted(q_edges):
            merged = [blk for i, blk in enumerate(blocks) if i not in (a, b)]
            merged.append(blocks[a] | blocks[b])
            key = frozenset(merged)
            if key not in seen:
                seen.add(key)
                stack.append(tuple(sorted(merged, key=min)))
    return False, None


def treewidth_bruteforce(g):
    """Exact treewidth by dynamic programming over elimination sets (n <= 12)."""
    n = g.n
    if n > MAX_ORACLE_HOST:
        raise ValueError(f"graph has {n} vertices; the guard is {MAX_ORACLE_HOST}")
    if n == 0:
        return -1
    adj = [0] * n
    for a, b in g.edges:
        adj[a - 1] |= 1 << (b - 1)
        adj[b - 1] |= 1 << (a - 1)

    def q_size(s, v):
        # vertices outside s | {v} reachable from v through s
        seen = 1 << v
        frontier = 1 << v
        out = 0
        while frontier:
            nxt = 0
            x = frontier
            while x:
                low = x & -x
                i = low.bit_length() - 1
                x ^= low
                nb = adj[i] & ~seen
                seen |= nb
                out |= nb & ~s
                nxt |= nb & s
            frontier = nxt
        return bin(out & ~(1 << v)).count("1")

    best = {0: -1}
    for size in range(1, n + 1):
        for combo in combinations(range(n), size):
            s = 0
            for i in combo:
                s |= 1 << i
            val = n
            for v in combo:
                rest = s & ~(1 << v)
                val = min(val, max(best[rest], q_size(rest, v)))
            best[s] = val
    return best[(1 << n) - 1]
