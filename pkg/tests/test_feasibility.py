from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from rainbowcert.errors import BudgetExceeded, Infeasible
from rainbowcert.feasibility import (
    ONLY_TRIVIAL,
    UNBOUNDED,
    WITNESS,
    FeasibilitySystem,
    build_system,
    check_dual_certificate,
    compare_verdicts,
    integer_oracle,
    only_trivial,
)
from rainbowcert.grading import word_grading
from support import chekanov, generated_systems, oracle_agreement, torus

TORUS_CASES = [(2, 3), (2, 5), (2, 7), (3, 4), (3, 5), (4, 5)]
LEFT_CANDS = [("a_8",), ("a_9",), ("a_8", "a_8"), ("a_9", "a_9"), ("a_8", "a_9")]


def r_chords(d):
    return [(d.label(c),) for c in d.crossing_order if d.label(c).startswith("r")]


def test_trefoil_system_shape():
    d = torus(2, 3)
    sys = build_system(d, ("α_1",), r_chords(d))
    assert len(sys.faces) == 6 and len(sys.variables) == 3
    assert sys.rhs_vector() == word_grading(d, ("α_1",))
    assert dict(zip(sys.faces, sys.rhs)) == {f: int(f == "B_1") for f in sys.faces}
    for j, w in enumerate(sys.variables):
        assert sys.column(j) == word_grading(d, w)


@pytest.mark.parametrize("pq", TORUS_CASES)
def test_torus_claim(pq):
    d = torus(*pq)
    sys = build_system(d, ("α_1",), r_chords(d))
    v = only_trivial(sys)
    assert v.kind == ONLY_TRIVIAL
    for j in range(len(sys.variables)):
        assert v.maxima[j] == 0
        assert check_dual_certificate(sys.matrix, sys.rhs, j, v.certificates[j]) == []


def test_zero_column_is_unbounded_witness():
    sys = FeasibilitySystem([("x",), ("y",)], ["F"], [[F(0), F(1)]], [F(1)])
    v = only_trivial(sys)
    assert v.kind == WITNESS and v.maxima[0] == UNBOUNDED and v.witness[0] > 0
    assert integer_oracle(sys, 1).kind == WITNESS


def test_empty_system():
    sys = FeasibilitySystem([], ["F"], [[]], [F(1)])
    assert only_trivial(sys).kind == ONLY_TRIVIAL
    assert integer_oracle(sys, 3).kind == ONLY_TRIVIAL


def test_negative_target_infeasible():
    sys = FeasibilitySystem([("x",)], ["F"], [[F(1)]], [F(-1)])
    with pytest.raises(Infeasible):
        only_trivial(sys)


def test_left_52_columns_leave_a4():
    d = chekanov("left")
    sys = build_system(d, ("a_4",), LEFT_CANDS)
    assert len(sys.faces) == 10 and len(sys.variables) == 5
    for j in range(5):
        col = sys.column(j)
        assert any(v > 0 for f, v in col.coeffs.items() if f != "A_4")


def test_left_52_has_a_pair_witness():
    # I(a_8) + I(a_9) = A_4 - B_6 makes x_8 = x_9 = 1 feasible
    d = chekanov("left")
    sys = build_system(d, ("a_4",), LEFT_CANDS)
    assert sys.satisfied_by([1, 1, 0, 0, 0])
    assert only_trivial(sys).kind == WITNESS
    assert integer_oracle(sys, 10).kind == WITNESS


def test_oracle_limits():
    sys = FeasibilitySystem([(f"x{j}",) for j in range(13)], ["F"], [[F(1)] * 13], [F(1)])
    with pytest.raises(BudgetExceeded):
        integer_oracle(sys, 1)
    sys = FeasibilitySystem([(f"x{j}",) for j in range(8)], ["F"], [[F(1)] * 8], [F(1)])
    with pytest.raises(BudgetExceeded):
        integer_oracle(sys, 10, budget=1000)


def test_torus_2_3_oracle_agrees():
    d = torus(2, 3)
    sys = build_system(d, ("α_1",), r_chords(d))
    assert integer_oracle(sys, 10).kind == ONLY_TRIVIAL


def test_scaling_note():
    sys = FeasibilitySystem([("x",)], ["F"], [[F(2)]], [F(1)])
    lpv, iv = only_trivial(sys), integer_oracle(sys, 10)
    assert (lpv.kind, iv.kind) == (WITNESS, ONLY_TRIVIAL)
    ok, note = compare_verdicts(sys, lpv, iv)
    assert ok and note["kind"] == "scaling" and note["denominator"] == 2


def test_dual_certificate_checker_rejects_tampering():
    d = torus(2, 5)
    sys = build_system(d, ("α_1",), r_chords(d))
    v = only_trivial(sys)
    y = list(v.certificates[0])
    assert check_dual_certificate(sys.matrix, sys.rhs, 0, y) == []
    assert check_dual_certificate(sys.matrix, sys.rhs, 0, [0] * len(y))
    assert check_dual_certificate(sys.matrix, sys.rhs, 0, y[:-1])


def test_json_round_trip():
    d = chekanov("left")
    sys = build_system(d, ("a_4",), LEFT_CANDS)
    assert FeasibilitySystem.from_json(sys.to_json()) == sys
    js = only_trivial(sys).to_json(sys)
    assert js["kind"] == WITNESS and set(js["witness"]) <= {"(a_8)", "(a_9)", "(a_8 a_8)", "(a_9 a_9)", "(a_8 a_9)"}


SYSTEMS = generated_systems(40, seed=7, max_vars=4)


@pytest.mark.parametrize("k", range(len(SYSTEMS)))
def test_witness_soundness_and_agreement(k):
    sys = SYSTEMS[k]
    v = only_trivial(sys)
    if v.kind == WITNESS:
        x = [v.witness.get(j, 0) for j in range(len(sys.variables))]
        assert any(x) and sys.satisfied_by(x)
    else:
        for j, y in v.certificates.items():
            assert check_dual_certificate(sys.matrix, sys.rhs, j, y) == []
    ok, note = oracle_agreement(sys, 6)
    assert ok, note


@settings(max_examples=25, deadline=None)
@given(st.integers(0, len(SYSTEMS) - 1), st.data())
def test_monotone_in_columns(k, data):
    sys = SYSTEMS[k]
    n = len(sys.variables)
    keep = sorted(data.draw(st.sets(st.integers(0, n - 1), max_size=n)))
    sub = FeasibilitySystem(
        [sys.variables[j] for j in keep], sys.faces, [[row[j] for j in keep] for row in sys.matrix], sys.rhs
    )
    if only_trivial(sys).kind == ONLY_TRIVIAL:
        assert only_trivial(sub).kind == ONLY_TRIVIAL


def test_determinism():
    for sys in SYSTEMS[:10]:
        assert only_trivial(sys) == only_trivial(sys)
