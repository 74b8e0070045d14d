from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from rainbowcert.action import (
    brute_force_candidates,
    corner_relations,
    default_epsilon,
    enumerate_candidates,
    parse_constraint,
    realize_areas,
)
from rainbowcert.errors import BudgetExceeded, Infeasible, ParseError
from rainbowcert.oracle import relation_residuals
from rainbowcert.words import canonical_rotation
from support import TORUS_PAIRS, chekanov, torus

CHAIN = "act(a8) == act(a9) < act(a4) << act(a7) << act(a3) << act(a5) << act(a6) << act(a2) << act(a1)"

LEFT_REL = {
    "B_3": {"a_2": 1, "a_5": -1, "a_6": -1, "a_9": -1},
    "B_2": {"a_1": 1, "a_5": -1, "a_6": -1, "a_7": -1},
    "B_6": {"a_4": 1, "a_8": -1, "a_9": -1},
    "B_5": {"a_3": 1, "a_8": -1, "a_7": -1},
}
RIGHT_REL = dict(LEFT_REL, B_4={"a_6": 1, "a_7": 1, "a_8": 1, "a_9": 1, "a_4": -2})


def test_chekanov_relations():
    assert corner_relations(chekanov("left")).nontrivial() == LEFT_REL
    assert corner_relations(chekanov("right")).nontrivial() == RIGHT_REL


@pytest.mark.parametrize("d", [torus(2, 3), torus(3, 4), chekanov("left"), chekanov("right")], ids=repr)
def test_one_relation_per_face_small_coefficients(d):
    sys = corner_relations(d)
    assert set(sys.relations) == {f.label for f in d.bounded_faces}
    assert all(v in (-2, -1, 1, 2) for r in sys.relations.values() for v in r.values())


@pytest.mark.parametrize("pq", [(2, 3), (2, 5), (3, 4)])
def test_coordinate_oracle(pq):
    resid, heights, areas = relation_residuals(torus(*pq))
    assert max(resid.values()) < 1e-9


def test_reference_ordering_realizable():
    d = chekanov("left")
    a = realize_areas(corner_relations(d), [CHAIN, "area(B6) <= eps"])
    act = a.actions
    assert act["a_8"] == act["a_9"] < act["a_4"]
    order = ["a_4", "a_7", "a_3", "a_5", "a_6", "a_2", "a_1"]
    for x, y in zip(order[1:], order[2:]):
        assert 100 * act[x] <= act[y]
    assert a.areas["B_6"] <= F(1, 1000)
    assert all(v > 0 for v in a.areas.values()) and all(v >= 1 for v in act.values())


def test_torus_small_b1():
    d = torus(3, 4)
    sys = corner_relations(d)
    others = [f for f in sys.relations if f[0] == "B" and f != "B_1"]
    cons = [f"area(B_1) << area({f})" for f in others]
    a = realize_areas(sys, cons, gap=1000)
    assert all(1000 * a.areas["B_1"] <= a.areas[f] for f in others)


def test_contradiction_infeasible_with_certificate():
    sys = corner_relations(torus(2, 3))
    with pytest.raises(Infeasible) as exc:
        realize_areas(sys, ["area(B_1) >= 1", "area(B_1) <= 0"])
    cert = exc.value.certificate
    assert len(cert["multipliers"]) == len(cert["rows"])


def test_parse_constraint():
    faces, chords = ["B_1", "B_2"], ["a_1", "a_2"]
    atoms = parse_constraint("act(a1) << act(a2)", faces, chords, F(1, 1000), 10)
    assert atoms == [("<=", ({("act", "a_1"): 10}, 0), ({("act", "a_2"): 1}, 0))]
    atoms = parse_constraint("area(B1) <= eps", faces, chords, F(1, 1000))
    assert atoms[0][2] == ({}, F(1, 1000))
    assert len(parse_constraint("act(a1) == act(a2) < 3", faces, chords, 1)) == 2
    with pytest.raises(ParseError):
        parse_constraint("act(a1)", faces, chords, 1)
    with pytest.raises(ParseError):
        parse_constraint("act(zz) < 1", faces, chords, 1)


def _left_assignment():
    d = chekanov("left")
    return d, realize_areas(corner_relations(d), [CHAIN, "area(B6) <= eps"])


def test_left_candidates_exact():
    d, a = _left_assignment()
    got = enumerate_candidates(d, a, "a4")
    assert set(got) == {("a_8",), ("a_9",), ("a_8", "a_8"), ("a_9", "a_9"), ("a_8", "a_9")}
    assert got == brute_force_candidates(d, a, "a4", default_epsilon(a), 4)


def test_cheap_target_has_no_candidates():
    d, a = _left_assignment()
    # a_8 is the cheapest chord; any other word costs at least as much plus a full action
    assert enumerate_candidates(d, a, "a8", epsilon=F(0)) == []


def test_budget():
    d, a = _left_assignment()
    with pytest.raises(BudgetExceeded):
        enumerate_candidates(d, a, "a1", max_len=6, budget=50)


def test_trefoil_candidates_match_brute_force():
    d = torus(2, 3)
    sys = corner_relations(d)
    a = realize_areas(sys, ["area(B_1) << area(B_2)"], gap=1000)
    eps = default_epsilon(a)
    got = enumerate_candidates(d, a, "α_1", eps, 6)
    assert got == brute_force_candidates(d, a, "α_1", eps, 6)
    for w in got:
        assert set(w) <= {"r_{1,1}", "r_{1,2}", "r_{1,3}"}


def _closed_under_bound(d, a, target, eps, got, max_len):
    """A maximal-action word that could still grow must not fit one more letter."""
    tlen = 1
    if not got:
        return
    top = max(a.action(w) for w in got)
    for w in got:
        if a.action(w) != top or len(w) == max_len:
            continue
        for ch in a.actions:
            ext = w + (ch,)
            assert a.action(ext) >= a.action((d.label(d.crossing_id(target)),)) + 3 * eps * (len(ext) + tlen)


@settings(max_examples=25, deadline=None)
@given(
    st.lists(st.integers(1, 30), min_size=9, max_size=9),
    st.sampled_from(["a_1", "a_3", "a_4", "a_7"]),
    st.sampled_from([F(0), F(1, 100), F(1, 10), F(1, 3)]),
)
def test_enumeration_equals_brute_force(weights, target, eps):
    """Arbitrary positive actions: pruning never loses a word."""
    from rainbowcert.action import AreaAssignment

    d = chekanov("left")
    labels = [d.label(c) for c in d.crossing_order]
    a = AreaAssignment({c: F(w) for c, w in zip(labels, weights)}, {})
    got = enumerate_candidates(d, a, target, eps, max_len=3, budget=10**6)
    assert got == brute_force_candidates(d, a, target, eps, 3)
    assert len(set(map(canonical_rotation, got))) == len(got)
    _closed_under_bound(d, a, target, eps, got, 3)


@settings(max_examples=20, deadline=None)
@given(st.sampled_from(TORUS_PAIRS[:4]), st.integers(2, 1000))
def test_assignments_satisfy_relations(pq, gap):
    d = torus(*pq)
    sys = corner_relations(d)
    a = realize_areas(sys, ["area(B_1) << area(B_2)"], gap=gap)
    for f, rel in sys.relations.items():
        assert a.areas[f] == sum(v * a.actions[c] for c, v in rel.items())
        assert a.areas[f] > 0
    assert all(v > 0 for v in a.actions.values())
    assert sum(sys.winding[f] * a.areas[f] for f in sys.relations) == 0
