import itertools

import pytest
from hypothesis import given, settings, strategies as st

from rainbowcert.errors import NotBraidClosure
from rainbowcert.index import (
    ACTION_FILTER,
    SINGLE_CHORD,
    capping_path,
    cz_index,
    degree_zero_generators,
    rotation_number,
)
from support import braid_corpus, chekanov, torus


@pytest.mark.parametrize("d", braid_corpus(), ids=repr)
def test_rotation_angles_two_values(d):
    for ci, cj in itertools.product(d.crossing_order, repeat=2):
        r = rotation_number(d, ci, cj)
        kind = d.meta["crossings"][ci]["kind"]
        assert r.theta == (1 if kind == "braid" else 3)
        assert r.rot == (0 if kind == "braid" else 1)


def test_arc_bookkeeping_balances():
    d = torus(3, 4)
    for ci, cj in itertools.product(d.crossing_order, repeat=2):
        t1, t2, t3 = rotation_number(d, ci, cj).arcs
        if d.meta["crossings"][ci]["kind"] == "braid":
            assert t1 == 1 and t2 == t3
        else:
            assert t1 == 0 and t3 == t2 + 1


def test_capping_path_endpoints():
    d = torus(2, 3)
    ci, cj = d.crossing_id("r_{1,1}"), d.crossing_id("α_2")
    path = capping_path(d, ci, cj)
    assert d.edges[path[0]].tail[0] == ci and d.edges[path[-1]].head[0] == cj


def test_cz_examples():
    d = torus(2, 3)
    assert cz_index(d, ("α_1",)) == 2
    for n in range(1, 5):
        for w in itertools.product(["r_{1,1}", "r_{1,2}", "r_{1,3}"], repeat=n):
            assert cz_index(d, w) == n
    assert cz_index(d, ()) == 0


def test_generic_diagram_rejected():
    with pytest.raises(NotBraidClosure):
        rotation_number(chekanov("left"), "a_1", "a_2")
    with pytest.raises(NotBraidClosure):
        cz_index(chekanov("left"), ("a_1",))


def test_policies():
    assert degree_zero_generators(torus(3, 4)).name == SINGLE_CHORD
    assert degree_zero_generators(chekanov("left")).name == ACTION_FILTER
    assert degree_zero_generators(torus(3, 4), braid_closure=False).name == ACTION_FILTER


CORPUS = braid_corpus()


@settings(max_examples=100, deadline=None)
@given(st.sampled_from(CORPUS).flatmap(
    lambda d: st.tuples(st.just(d), st.lists(st.sampled_from(d.crossing_order), min_size=1, max_size=5), st.integers(0, 4))
))
def test_cz_bound_and_rotation_invariance(args):
    d, w, k = args
    cz = cz_index(d, w)
    assert cz >= len(w)
    k %= len(w)
    assert cz_index(d, w[k:] + w[:k]) == cz
