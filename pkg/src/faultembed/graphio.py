"""Line-based text formats.

All readers ignore blank lines and ``#`` comments and raise
:class:`ParseError` with the offending line number.  Formats::

    qubo <n>            graph <n>           fabric <m> <c>
    <i> <j> <value>     e <u> <v>           dead <n>

    embedding <n_P> <m> <c> <provenance>
    node <k>: <v1> <v2> ...

    td <numbags> <width>
    bag <i>: <v1> ...
    tedge <i> <j>

    catalog <count>
    graph <n> / e <u> <v> / history <k>: <v1> ...   (one block per entry)
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .fabric import Fabric
from .graph import ProblemGraph


class ParseError(ValueError):
    def __init__(self, lineno, message):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}")


def _lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _ints(tokens, lineno):
    try:
        return [int(t) for t in tokens]
    except ValueError:
        raise ParseError(lineno, f"expected integers, got {' '.join(tokens)!r}") from None


def _header(lines, keyword, nargs, text_kind):
    try:
        lineno, line = next(lines)
    except StopIteration:
        raise ParseError(0, f"empty {text_kind} input") from None
    tokens = line.split()
    if tokens[0] != keyword or len(tokens) < nargs + 1:
        raise ParseError(lineno, f"expected header '{keyword}' with {nargs} field(s)")
    return lineno, tokens


def read_qubo(text):
    """Problem graph of a QUBO matrix given as ``i j value`` triplets.

    Diagonal entries become vertex weights; off-diagonal ``(i, j)`` and
    ``(j, i)`` entries are summed into one edge weight.  An edge exists iff
    some off-diagonal entry for the pair is nonzero.
    """
    lines = _lines(text)
    lineno, tokens = _header(lines, "qubo", 1, "qubo")
    if len(tokens) != 2:
        raise ParseError(lineno, "header must be 'qubo <n>'")
    (n,) = _ints(tokens[1:], lineno)
    if n < 0:
        raise ParseError(lineno, "negative variable count")
    seen = {}
    vweights = {}
    eweights = {}
    nonzero = set()
    for lineno, line in lines:
        tokens = line.split()
        if len(tokens) != 3:
            raise ParseError(lineno, "expected '<i> <j> <value>'")
        i, j = _ints(tokens[:2], lineno)
        try:
            value = float(tokens[2])
        except ValueError:
            raise ParseError(lineno, f"bad value {tokens[2]!r}") from None
        if not (1 <= i <= n and 1 <= j <= n):
            raise ParseError(lineno, f"index ({i}, {j}) out of range 1..{n}")
        if (i, j) in seen:
            if seen[(i, j)] != value:
                raise ParseError(lineno, f"conflicting duplicate entry ({i}, {j})")
            continue
        seen[(i, j)] = value
        if i == j:
            vweights[i] = value
            continue
        key = (min(i, j), max(i, j))
        eweights[key] = eweights.get(key, 0.0) + value
        if value != 0:
            nonzero.add(key)
    return ProblemGraph(
        n,
        nonzero,
        vertex_weights=vweights,
        edge_weights={k: w for k, w in eweights.items() if k in nonzero},
    )


def read_graph(text):
    lines = _lines(text)
    lineno, tokens = _header(lines, "graph", 1, "graph")
    if len(tokens) != 2:
        raise ParseError(lineno, "header must be 'graph <n>'")
    (n,) = _ints(tokens[1:], lineno)
    g = ProblemGraph(max(n, 0))
    if n < 0:
        raise ParseError(lineno, "negative vertex count")
    for lineno, line in lines:
        tokens = line.split()
        if tokens[0] != "e" or len(tokens) != 3:
            raise ParseError(lineno, "expected 'e <u> <v>'")
        u, v = _ints(tokens[1:], lineno)
        try:
            g.add_edge(u, v)
        except ValueError as exc:
            raise ParseError(lineno, str(exc)) from None
    return g


def write_graph(g):
    out = [f"graph {g.n}"]
    out += [f"e {u} {v}" for u, v in sorted(g.edges)]
    return "\n".join(out) + "\n"


def read_problem(text):
    """Dispatch on the header: ``graph`` or ``qubo``."""
    for _, line in _lines(text):
        if line.split()[0] == "qubo":
            return read_qubo(text)
        return read_graph(text)
    raise ParseError(0, "empty problem input")


@dataclass
class EmbeddingRecord:
    """Serializable node -> chain map; ``chains[k-1]`` is node ``k``'s chain."""

    m: int
    c: int
    chains: list
    provenance: str = "unknown"

    @property
    def n_nodes(self):
        return len(self.chains)


def write_embedding(rec):
    if any(len(ch) == 0 for ch in rec.chains):
        raise ValueError("embedding has an empty chain")
    prov = rec.provenance.replace("\n", " ").strip() or "unknown"
    out = [f"embedding {rec.n_nodes} {rec.m} {rec.c} {prov}"]
    for k, ch in enumerate(rec.chains, start=1):
        out.append(f"node {k}: " + " ".join(str(v) for v in ch))
    return "\n".join(out) + "\n"


def read_embedding(text):
    lines = _lines(text)
    lineno, tokens = _header(lines, "embedding", 3, "embedding")
    n_p, m, c = _ints(tokens[1:4], lineno)
    provenance = " ".join(tokens[4:]) or "unknown"
    chains = {}
    for lineno, line in lines:
        head, sep, rest = line.partition(":")
        htoks = head.split()
        if not sep or len(htoks) != 2 or htoks[0] != "node":
            raise ParseError(lineno, "expected 'node <k>: <v1> ...'")
        (k,) = _ints(htoks[1:], lineno)
        if not 1 <= k <= n_p:
            raise ParseError(lineno, f"node {k} out of range 1..{n_p}")
        if k in chains:
            raise ParseError(lineno, f"duplicate node {k}")
        verts = _ints(rest.split(), lineno)
        if not verts:
            raise ParseError(lineno, f"node {k} has an empty chain")
        chains[k] = verts
    missing = [k for k in range(1, n_p + 1) if k not in chains]
    if missing:
        raise ParseError(lineno, f"missing node lines for {missing[:5]}")
    return EmbeddingRecord(m, c, [chains[k] for k in range(1, n_p + 1)], provenance)


def write_fabric(f):
    out = [f"fabric {f.m} {f.c}"]
    out += [f"dead {n}" for n in f.dead_vertices()]
    return "\n".join(out) + "\n"


def read_fabric(text):
    lines = _lines(text)
    lineno, tokens = _header(lines, "fabric", 2, "fabric")
    if len(tokens) != 3:
        raise ParseError(lineno, "header must be 'fabric <m> <c>'")
    m, c = _ints(tokens[1:], lineno)
    if m < 1 or c < 1:
        raise ParseError(lineno, "m and c must be positive")
    size = 2 * c * m * m
    alive = np.ones(size, dtype=bool)
    for lineno, line in lines:
        tokens = line.split()
        if tokens[0] != "dead" or len(tokens) != 2:
            raise ParseError(lineno, "expected 'dead <n>'")
        (n,) = _ints(tokens[1:], lineno)
        if not 1 <= n <= size:
            raise ParseError(lineno, f"dead vertex {n} out of range 1..{size}")
        if not alive[n - 1]:
            raise ParseError(lineno, f"duplicate dead vertex {n}")
        alive[n - 1] = False
    return Fabric(m, c, alive)


def write_decomposition(bags, tree_edges):
    width = max((len(b) for b in bags), default=0) - 1
    out = [f"td {len(bags)} {width}"]
    for i, bag in enumerate(bags, start=1):
        out.append(f"bag {i}: " + " ".join(str(v) for v in sorted(bag)))
    out += [f"tedge {i} {j}" for i, j in tree_edges]
    return "\n".join(out) + "\n"


def read_decomposition(text):
    """Returns ``(bags, tree_edges)`` with 1-based bag indices in edges."""
    lines = _lines(text)
    lineno, tokens = _header(lines, "td", 2, "decomposition")
    nbags, width = _ints(tokens[1:3], lineno)
    bags = {}
    tree_edges = []
    for lineno, line in lines:
        if line.startswith("bag"):
            head, sep, rest = line.partition(":")
            htoks = head.split()
            if not sep or len(htoks) != 2:
                raise ParseError(lineno, "expected 'bag <i>: ...'")
            (i,) = _ints(htoks[1:], lineno)
            if not 1 <= i <= nbags or i in bags:
                raise ParseError(lineno, f"bad or duplicate bag index {i}")
            bags[i] = frozenset(_ints(rest.split(), lineno))
        elif line.startswith("tedge"):
            toks = line.split()
            if len(toks) != 3:
                raise ParseError(lineno, "expected 'tedge <i> <j>'")
            i, j = _ints(toks[1:], lineno)
            if not (1 <= i <= nbags and 1 <= j <= nbags):
                raise ParseError(lineno, f"tree edge ({i}, {j}) out of range")
            tree_edges.append((i, j))
        else:
            raise ParseError(lineno, f"unexpected line {line!r}")
    if len(bags) != nbags:
        raise ParseError(lineno, f"expected {nbags} bags, found {len(bags)}")
    bag_list = [bags[i] for i in range(1, nbags + 1)]
    if bag_list and max(len(b) for b in bag_list) - 1 != width:
        raise ParseError(1, "declared width does not match bags")
    return bag_list, tree_edges


@dataclass
class CatalogEntry:
    graph: ProblemGraph
    history: dict = field(default_factory=dict)


def write_catalog(entries):
    out = [f"catalog {len(entries)}"]
    for entry in entries:
        out.append(write_graph(entry.graph).rstrip("\n"))
        for k in range(1, entry.graph.n + 1):
            out.append(f"history {k}: " + " ".join(str(v) for v in sorted(entry.history[k])))
    return "\n".join(out) + "\n"


def read_catalog(text):
    lines = list(_lines(text))
    if not lines:
        raise ParseError(0, "empty catalog input")
    lineno, line = lines[0]
    tokens = line.split()
    if tokens[0] != "catalog" or len(tokens) != 2:
        raise ParseError(lineno, "header must be 'catalog <count>'")
    (count,) = _ints(tokens[1:], lineno)
    entries = []
    block = None
    for lineno, line in lines[1:]:
        tokens = line.split()
        if tokens[0] == "graph":
            if len(tokens) != 2:
                raise ParseError(lineno, "expected 'graph <n>'")
            (n,) = _ints(tokens[1:], lineno)
            block = CatalogEntry(ProblemGraph(n))
            entries.append(block)
        elif block is None:
            raise ParseError(lineno, "entry line before any 'graph' header")
        elif tokens[0] == "e":
            if len(tokens) != 3:
                raise ParseError(lineno, "expected 'e <u> <v>'")
            try:
                block.graph.add_edge(*_ints(tokens[1:], lineno))
            except ValueError as exc:
                raise ParseError(lineno, str(exc)) from None
        elif tokens[0] == "history":
            head, sep, rest = line.partition(":")
            htoks = head.split()
            if not sep or len(htoks) != 2:
                raise ParseError(lineno, "expected 'history <k>: ...'")
            (k,) = _ints(htoks[1:], lineno)
            verts = _ints(rest.split(), lineno)
            if not 1 <= k <= block.graph.n or not verts:
                raise ParseError(lineno, f"bad history line for vertex {k}")
            block.history[k] = frozenset(verts)
        else:
            raise ParseError(lineno, f"unexpected line {line!r}")
    if len(entries) != count:
        raise ParseError(lineno, f"expected {count} catalog entries, found {len(entries)}")
    for entry in entries:
        if len(entry.history) != entry.graph.n:
            raise ParseError(lineno, "catalog entry missing history lines")
    return entries
