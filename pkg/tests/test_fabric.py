from itertools import combinations

import numpy as np
import pytest

from faultembed.fabric import (
    apply_faults,
    build_fabric,
    flip,
    index_to_label,
    label_to_index,
    map_from_view,
    perfect_edge_count,
    subgrid,
)


def _adjacent(x, y, c):
    # adjacency rules stated directly on labels
    (a1, b1, d1), (a2, b2, d2) = x, y
    if (a1, b1) == (a2, b2):
        return (d1 <= c) != (d2 <= c)
    if d1 != d2:
        return False
    if d1 <= c:
        return b1 == b2 and abs(a1 - a2) == 1
    return a1 == a2 and abs(b1 - b2) == 1


def _brute_edge_count(m, c):
    labels = [(a, b, d) for a in range(1, m + 1) for b in range(1, m + 1) for d in range(1, 2 * c + 1)]
    return sum(_adjacent(x, y, c) for x, y in combinations(labels, 2))


@pytest.mark.parametrize("m,c", [(4, 4), (1, 1), (1, 4), (2, 2), (3, 1), (3, 3)])
def test_edge_count_matches_label_rules(m, c):
    f = build_fabric(m, c)
    assert f.size == 2 * c * m * m
    assert f.edge_count() == _brute_edge_count(m, c) == perfect_edge_count(m, c)


def test_build_fabric_examples():
    f = build_fabric(4, 4)
    assert (f.size, f.edge_count()) == (128, 352)
    assert (build_fabric(1, 1).size, build_fabric(1, 1).edge_count()) == (2, 1)
    assert (build_fabric(1, 4).size, build_fabric(1, 4).edge_count()) == (8, 16)


@pytest.mark.parametrize("m,c", [(0, 4), (4, 0), (-1, 2)])
def test_build_fabric_rejects_empty(m, c):
    with pytest.raises(ValueError):
        build_fabric(m, c)


def test_label_index_examples():
    assert label_to_index(1, 1, 1, 4, 4) == 1
    assert label_to_index(2, 3, 5, 4, 4) == 53
    assert label_to_index(4, 4, 8, 4, 4) == 128
    assert index_to_label(53, 4, 4) == (2, 3, 5)
    assert index_to_label(8, 4, 4) == (1, 1, 8)


@pytest.mark.parametrize("bad", [(0, 1, 1), (1, 5, 1), (1, 1, 9)])
def test_label_out_of_range(bad):
    with pytest.raises(ValueError):
        label_to_index(*bad, 4, 4)


@pytest.mark.parametrize("n", [0, 129])
def test_index_out_of_range(n):
    with pytest.raises(ValueError):
        index_to_label(n, 4, 4)


def test_neighbors_examples():
    f = build_fabric(2, 2)
    assert f.neighbors(1) == {3, 4, 9}
    g = build_fabric(1, 3)
    assert g.neighbors(2) == {4, 5, 6}
    h = apply_faults(f, [3])
    assert h.neighbors(1) == {4, 9}
    assert h.neighbors(3) == set()


def test_neighbors_match_label_rules():
    m, c = 3, 2
    f = build_fabric(m, c)
    for n in range(1, f.size + 1):
        expected = {u for u in range(1, f.size + 1)
                    if u != n and _adjacent(index_to_label(n, m, c), index_to_label(u, m, c), c)}
        assert f.neighbors(n) == expected


def test_degree_bounds():
    for m, c in [(2, 3), (4, 4), (5, 1)]:
        f = build_fabric(m, c)
        assert {len(f.neighbors(n)) for n in range(1, f.size + 1)} <= {c, c + 1, c + 2}
    f1 = build_fabric(1, 5)
    assert {len(f1.neighbors(n)) for n in range(1, f1.size + 1)} == {5}


def test_apply_faults_modes():
    f = build_fabric(32, 4)
    assert apply_faults(f, []) == f
    a = apply_faults(f, rate=0.02, seed=7)
    assert a.dead_count == 164
    assert apply_faults(f, rate=0.02, seed=7) == a
    assert apply_faults(f, rate=0.02, seed=8) != a
    once = apply_faults(f, [5, 9])
    assert apply_faults(once, [5, 9]) == once


@pytest.mark.parametrize("kwargs", [dict(rate=-0.1, seed=0), dict(rate=1.5, seed=0)])
def test_apply_faults_bad_rate(kwargs):
    with pytest.raises(ValueError):
        apply_faults(build_fabric(2, 2), **kwargs)


def test_apply_faults_bad_id():
    with pytest.raises(ValueError):
        apply_faults(build_fabric(2, 2), [17])


def test_faults_never_resurrect():
    f = apply_faults(build_fabric(4, 4), rate=0.1, seed=3)
    g = apply_faults(f, rate=0.1, seed=4)
    assert not np.any(g.alive & ~f.alive)


def test_flip():
    f = apply_faults(build_fabric(2, 2), [1])
    assert flip(f, horizontal=True).dead_vertices() == [label_to_index(1, 2, 1, 2, 2)]
    assert flip(f, vertical=True).dead_vertices() == [label_to_index(2, 1, 1, 2, 2)]
    assert flip(flip(f, True), True) == f
    perfect = build_fabric(3, 2)
    assert flip(perfect, True, True) == perfect
    g = apply_faults(build_fabric(3, 2), rate=0.2, seed=1)
    for h, v in [(True, False), (False, True), (True, True)]:
        fl = flip(g, h, v)
        assert fl.alive_count == g.alive_count and fl.edge_count() == g.edge_count()


def test_subgrid():
    f = build_fabric(4, 4)
    assert subgrid(f, 0) == f
    assert subgrid(f, 1).size == 72
    row1 = [label_to_index(1, b, d, 4, 4) for b in range(1, 5) for d in range(1, 9)]
    assert subgrid(apply_faults(f, row1), 1).is_perfect
    with pytest.raises(ValueError):
        subgrid(f, 4)


def test_map_from_view_inverts_flip_and_shift():
    f = apply_faults(build_fabric(4, 2), rate=0.3, seed=11)
    for h in (False, True):
        for v in (False, True):
            for k in range(4):
                view = subgrid(flip(f, h, v), k)
                for n in range(1, view.size + 1):
                    assert view.is_alive(n) == f.is_alive(map_from_view(n, 4, 2, h, v, k))
