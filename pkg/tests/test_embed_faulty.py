import numpy as np
import pytest

from faultembed import _kernels
from faultembed.embed_faulty import (
    ALGORITHMS,
    CELL_SCAN,
    FALLBACK,
    FLIP_DROP,
    GREEDY,
    SCHEMES,
    SINGLE,
    fallback_embed,
    greedy_count,
    greedy_embed,
    half_chain_status,
    orchestrate,
    single_cell_best,
)
from faultembed.embed_clique import embed_clique_perfect
from faultembed.fabric import apply_faults, build_fabric, label_to_index
from faultembed.graph import complete_graph
from faultembed.verify import is_minor_bruteforce, verify_minor_embedding


def _valid(f, result):
    return verify_minor_embedding(f, complete_graph(result.n), result.embedding.chain_sets()).passed


def test_clean_table_examples(f22_one_dead):
    t = half_chain_status(build_fabric(4, 4))
    assert t.clean_v == t.clean_h == ((1, 2, 3, 4),) * 4
    t = half_chain_status(f22_one_dead)
    assert t.clean_v == ((2,), (1, 2)) and t.clean_h == ((1, 2), (1, 2))
    f = build_fabric(3, 2)
    t = half_chain_status(apply_faults(f, range(1, f.size + 1)))
    assert t.clean_v == t.clean_h == ((), (), ())


def test_greedy_and_fallback_hand_trace(f22_one_dead):
    g = greedy_embed(f22_one_dead)
    assert g.n == 4 and _valid(f22_one_dead, g)
    fb = fallback_embed(f22_one_dead)
    assert fb.n == 3 and _valid(f22_one_dead, fb)


@pytest.mark.parametrize("m,c", [(1, 4), (2, 2), (3, 4), (4, 4)])
def test_perfect_fabric(m, c):
    f = build_fabric(m, c)
    g = greedy_embed(f)
    canon = embed_clique_perfect(m, c)
    # greedy splits the lowest pair rather than height c: same shape, other heights
    shape = lambda e: sorted((len(ch), ch.kind, ch.diagonal) for ch in e.chains)
    assert shape(g.embedding) == shape(canon)
    assert sorted(v for ch in g.embedding.chain_sets() for v in ch) == list(range(1, f.size + 1))
    assert fallback_embed(f).embedding.chain_sets() == embed_clique_perfect(m, c).chain_sets()
    for alg in ALGORITHMS:
        for scheme in SCHEMES:
            assert orchestrate(f, alg, scheme).n == c * m + 1


def test_single_fault_gives_cm():
    f = build_fabric(4, 4)
    for v in range(1, f.size + 1, 7):
        h = apply_faults(f, [v])
        r = greedy_embed(h)
        assert r.n == 16 and _valid(h, r)


def test_fallback_dead_cell():
    f = build_fabric(3, 2)
    cell = [label_to_index(2, 2, d, 3, 2) for d in range(1, 5)]
    assert fallback_embed(apply_faults(f, cell)).n == 0


def test_cell_scan_examples():
    f = build_fabric(2, 4)
    assert single_cell_best(f).n == 5
    dead = [label_to_index(a, b, d, 2, 4) for a in (1, 2) for b in (1, 2) for d in range(1, 9)
            if (a, b) != (2, 2) or d in (1, 2, 8)]
    h = apply_faults(f, dead)
    r = single_cell_best(h)
    assert r.n == 3 and r.algorithm == CELL_SCAN and _valid(h, r)
    lone = apply_faults(f, [v for v in range(1, f.size + 1) if v != 20])
    r = single_cell_best(lone)
    assert r.n == 1 and r.embedding.chain_sets() == [[20]]
    for alg in ALGORITHMS:
        for scheme in SCHEMES:
            assert orchestrate(lone, alg, scheme).n == 1


def test_cell_row_dead_flip_drop():
    f = build_fabric(4, 4)
    row1 = [label_to_index(1, b, d, 4, 4) for b in range(1, 5) for d in range(1, 9)]
    h = apply_faults(f, row1)
    r = orchestrate(h, GREEDY, FLIP_DROP)
    assert r.n == 13 and r.drops == 1 and _valid(h, r)
    assert r.corner == "UL"
    s = orchestrate(h, GREEDY, SINGLE)
    assert s.n == 5 and s.algorithm == CELL_SCAN and _valid(h, s)


def test_greedy_count_rules():
    assert greedy_count([1, 2], [2, 2]) == 4
    assert greedy_count([0, 0], [0, 0]) == 0
    assert greedy_count([1, 0], [0, 0]) == 1
    assert greedy_count([2, 0], [0, 2]) == 2
    assert greedy_count([2, 0], [0, 2], cross=True) == 3


def test_all_dead():
    f = build_fabric(2, 2)
    h = apply_faults(f, range(1, f.size + 1))
    for alg in ALGORITHMS:
        for scheme in SCHEMES:
            assert orchestrate(h, alg, scheme).n == 0


def _random_fabrics(count, seed, max_m=5, max_c=4):
    rng = np.random.default_rng(seed)
    for _ in range(count):
        m = int(rng.integers(1, max_m + 1))
        c = int(rng.integers(1, max_c + 1))
        p = float(rng.choice([0.0, 0.01, 0.03, 0.08, 0.2, 0.5]))
        yield apply_faults(build_fabric(m, c), rate=p, seed=rng)


def test_results_always_validate():
    for f in _random_fabrics(150, 1):
        for alg in ALGORITHMS:
            for scheme in SCHEMES:
                for cross in (False, True):
                    r = orchestrate(f, alg, scheme, cross)
                    assert _valid(f, r), (f.m, f.c, f.dead_vertices(), alg, scheme, cross)


def test_flip_drop_dominates_single_and_greedy_dominates_fallback():
    for f in _random_fabrics(150, 2):
        n = {(a, s): orchestrate(f, a, s).n for a in ALGORITHMS for s in SCHEMES}
        for a in ALGORITHMS:
            assert n[(a, FLIP_DROP)] >= n[(a, SINGLE)]
        for s in SCHEMES:
            assert n[(GREEDY, s)] >= n[(FALLBACK, s)]


def test_upper_bounded_by_oracle_on_tiny_fabrics():
    # no heuristic may claim a clique larger than the true maximum
    rng = np.random.default_rng(3)
    for _ in range(20):
        m, c = [(1, 3), (1, 4), (2, 1)][int(rng.integers(3))]
        f = apply_faults(build_fabric(m, c), rate=float(rng.choice([0.0, 0.15, 0.3])), seed=rng)
        n = orchestrate(f, GREEDY, FLIP_DROP).n
        if n:
            assert is_minor_bruteforce(complete_graph(n), f)[0]
        if f.alive_count <= 8:
            assert not is_minor_bruteforce(complete_graph(n + 2), f)[0] or n + 2 <= 2


@pytest.mark.parametrize("backend", ["numba", "numpy", "python"])
def test_kernel_matches_orchestrate(backend):
    slots = [(FALLBACK, SINGLE), (FALLBACK, FLIP_DROP), (GREEDY, SINGLE), (GREEDY, FLIP_DROP)]
    for f in _random_fabrics(120, 4, max_m=6):
        for cross in (False, True):
            if backend == "python":
                got = _kernels.outcomes_python(f.grid, f.c, cross)
            else:
                got = _kernels.trial_outcomes(f.grid, f.c, cross, backend)
            want = [orchestrate(f, a, s, cross).n for a, s in slots]
            assert list(got) == want, (f.m, f.c, f.dead_vertices(), cross)


def test_unknown_algorithm():
    with pytest.raises(ValueError):
        orchestrate(build_fabric(2, 2), "magic", SINGLE)
    with pytest.raises(ValueError):
        orchestrate(build_fabric(2, 2), GREEDY, "sideways")
