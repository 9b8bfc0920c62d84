from itertools import combinations

import numpy as np
import pytest

from faultembed.fabric import build_fabric
from faultembed.graph import (
    ProblemGraph,
    complete_bipartite,
    complete_graph,
    cycle_graph,
    path_graph,
    relabel,
)
from faultembed.graphio import CatalogEntry
from faultembed.minors import (
    canonical_form,
    contract,
    embed_via_catalog,
    enumerate_maximal_minors,
    subgraph_iso,
)
from faultembed.verify import is_minor_bruteforce, verify_minor_embedding, verify_subgraph_embedding


def wheel_plus_three():
    # hub 1 on hexagon 2..7 plus the three long diagonals
    rim = [2, 3, 4, 5, 6, 7]
    edges = {(1, v) for v in rim}
    edges |= {tuple(sorted((rim[i], rim[(i + 1) % 6]))) for i in range(6)}
    edges |= {(2, 5), (3, 6), (4, 7)}
    return ProblemGraph(7, edges)


def k6_minus_two():
    return ProblemGraph(6, set(combinations(range(1, 7), 2)) - {(3, 4), (5, 6)})


def _iso(a, b):
    return a.n == b.n and a.num_edges() == b.num_edges() and subgraph_iso(a, b) is not None


def test_k44_catalog():
    k44 = complete_bipartite(4, 4)
    cat = enumerate_maximal_minors(k44)
    expected = [k44, wheel_plus_three(), k6_minus_two(), complete_graph(5)]
    assert len(cat) == 4
    for entry, want in zip(cat, expected):
        assert _iso(entry.graph, want)
        chains = [sorted(entry.history[k]) for k in range(1, entry.graph.n + 1)]
        assert verify_minor_embedding(k44, entry.graph, chains).passed
        assert is_minor_bruteforce(entry.graph, k44)[0]
    for a, b in combinations(cat, 2):
        assert subgraph_iso(b.graph, a.graph) is None
        assert subgraph_iso(a.graph, b.graph) is None


@pytest.mark.parametrize("g", [complete_graph(3), path_graph(3)])
def test_trivial_catalogs(g):
    cat = enumerate_maximal_minors(g)
    assert len(cat) == 1 and cat[0].graph == g


def test_catalog_guard():
    with pytest.raises(ValueError):
        enumerate_maximal_minors(path_graph(11))


def test_contract():
    g, hist = contract(cycle_graph(4), {v: frozenset([v]) for v in range(1, 5)}, 2, 3)
    assert g.n == 3 and g.edges == {(1, 2), (2, 3), (1, 3)}
    assert hist == {1: {1}, 2: {2, 3}, 3: {4}}
    with pytest.raises(ValueError):
        contract(cycle_graph(4), {}, 1, 3)


def test_subgraph_iso_examples():
    k44 = complete_bipartite(4, 4)
    m = subgraph_iso(cycle_graph(8), k44)
    assert m is not None and verify_subgraph_embedding(k44, cycle_graph(8), m).passed
    assert subgraph_iso(complete_graph(3), k44) is None
    m = subgraph_iso(complete_graph(5), complete_graph(5))
    assert sorted(m.values()) == [1, 2, 3, 4, 5]


def test_canonical_form_invariant():
    rng = np.random.default_rng(0)
    for _ in range(30):
        n = int(rng.integers(1, 9))
        g = ProblemGraph(n, {e for e in combinations(range(1, n + 1), 2) if rng.random() < 0.45})
        perm = rng.permutation(n) + 1
        h = relabel(g, {i + 1: int(perm[i]) for i in range(n)})
        assert canonical_form(g) == canonical_form(h)
    assert canonical_form(path_graph(4)) != canonical_form(ProblemGraph(4, {(1, 2), (1, 3), (1, 4)}))


def test_embed_via_catalog():
    cell = build_fabric(1, 4)
    host = cell.to_graph()
    cat = enumerate_maximal_minors(host)
    chains = embed_via_catalog(wheel_plus_three(), host, cat)
    assert chains is not None
    assert verify_minor_embedding(cell, wheel_plus_three(), chains).passed
    k5_only = [e for e in cat if e.graph.n == 5]
    assert embed_via_catalog(wheel_plus_three(), host, k5_only) is None
    assert embed_via_catalog(complete_graph(6), host, cat) is None


def _random_graph(rng, n, p):
    return ProblemGraph(n, {e for e in combinations(range(1, n + 1), 2) if rng.random() < p})


def test_catalog_sound_and_complete_against_oracle():
    rng = np.random.default_rng(5)
    for _ in range(12):
        g = _random_graph(rng, int(rng.integers(3, 7)), 0.6)
        cat = enumerate_maximal_minors(g)
        for entry in cat:
            chains = [sorted(entry.history[k]) for k in range(1, entry.graph.n + 1)]
            assert verify_minor_embedding(g, entry.graph, chains).passed
        for _ in range(4):
            p = _random_graph(rng, int(rng.integers(2, 5)), 0.6)
            via = embed_via_catalog(p, g, cat)
            truth = is_minor_bruteforce(p, g)[0]
            assert (via is not None) == truth
            if via is not None:
                assert verify_minor_embedding(g, p, via).passed
