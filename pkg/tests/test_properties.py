"""Hypothesis searches over the same invariants the acceptance suites sample."""
import numpy as np
from hypothesis import given, settings
from hypothesis import strategies as st

from faultembed import _kernels, graphio
from faultembed.embed_faulty import FLIP_DROP, GREEDY, SINGLE, greedy_embed, orchestrate
from faultembed.fabric import Fabric, apply_faults, build_fabric, index_to_label, label_to_index
from faultembed.graph import complete_graph
from faultembed.verify import verify_minor_embedding


@st.composite
def fabrics(draw, max_m=6, max_c=4):
    m = draw(st.integers(1, max_m))
    c = draw(st.integers(1, max_c))
    size = 2 * c * m * m
    dead = draw(st.lists(st.integers(1, size), unique=True, max_size=min(size, 12)))
    return apply_faults(build_fabric(m, c), dead)


@given(st.integers(1, 64), st.integers(1, 8), st.data())
def test_label_round_trip(m, c, data):
    a, b = data.draw(st.integers(1, m)), data.draw(st.integers(1, m))
    d = data.draw(st.integers(1, 2 * c))
    n = label_to_index(a, b, d, m, c)
    assert 1 <= n <= 2 * c * m * m and index_to_label(n, m, c) == (a, b, d)


@settings(max_examples=200, deadline=None)
@given(fabrics(), st.booleans())
def test_orchestrate_validates(f, cross):
    for scheme in (SINGLE, FLIP_DROP):
        r = orchestrate(f, GREEDY, scheme, cross)
        assert verify_minor_embedding(f, complete_graph(r.n), r.embedding.chain_sets()).passed


@settings(max_examples=300, deadline=None)
@given(fabrics(max_m=8), st.booleans())
def test_backends_agree(f, cross):
    a = _kernels.trial_outcomes(f.grid, f.c, cross, "numba")
    b = _kernels.trial_outcomes(f.grid, f.c, cross, "numpy")
    assert np.array_equal(a, b)
    assert a[1] >= a[0] and a[3] >= a[2]


@settings(max_examples=200, deadline=None)
@given(fabrics(), st.data())
def test_resurrection_never_hurts(f, data):
    dead = f.dead_vertices()
    if not dead:
        return
    v = data.draw(st.sampled_from(dead))
    mask = f.alive.copy()
    mask[v - 1] = True
    g = Fabric(f.m, f.c, mask)
    assert greedy_embed(g).n >= greedy_embed(f).n


@settings(max_examples=200, deadline=None)
@given(fabrics())
def test_fabric_text_round_trip(f):
    assert graphio.read_fabric(graphio.write_fabric(f)) == f
    r = orchestrate(f)
    if r.n:
        rec = r.to_record()
        assert graphio.read_embedding(graphio.write_embedding(rec)) == rec
