from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from rainbowcert.lp import INFEASIBLE, OPTIMAL, UNBOUNDED, check_optimal, solve


def _dot(a, b):
    return sum(x * y for x, y in zip(a, b))


def _check(c, A, b, Ae, be, r):
    n = len(c)
    if r.status == OPTIMAL:
        assert not check_optimal(c, A, b, r, Ae, be)
    elif r.status == INFEASIBLE:
        y = r.dual_ub + r.dual_eq
        M, bb = A + Ae, b + be
        assert all(v >= 0 for v in r.dual_ub)
        assert all(sum(y[i] * M[i][j] for i in range(len(M))) >= 0 for j in range(n))
        assert _dot(y, bb) < 0
    else:
        assert all(v >= 0 for v in r.ray) and _dot(c, r.ray) > 0
        for row, bi in zip(A, b):
            assert _dot(row, r.x) <= bi and _dot(row, r.ray) <= 0
        for row, bi in zip(Ae, be):
            assert _dot(row, r.x) == bi and _dot(row, r.ray) == 0


def test_textbook():
    r = solve([3, 5], [[1, 0], [0, 2], [3, 2]], [4, 12, 18])
    assert r.status == OPTIMAL and r.value == 36 and r.x == [2, 6]


def test_infeasible_and_unbounded():
    assert solve([1], [[1], [-1]], [0, -1]).status == INFEASIBLE
    r = solve([1, 0], [[-1, 1]], [1])
    assert r.status == UNBOUNDED
    _check([1, 0], [[-1, 1]], [1], [], [], r)


def test_fractions_stay_exact():
    r = solve([1], [[3]], [1])
    assert r.value == F(1, 3)


def test_length_mismatch():
    with pytest.raises(ValueError):
        solve([1, 2], [[1]], [1])


ints = st.integers(-3, 3)


@st.composite
def lps(draw):
    n = draw(st.integers(1, 5))
    mu = draw(st.integers(1, 5))
    me = draw(st.integers(0, 2))
    A = [[draw(ints) for _ in range(n)] for _ in range(mu)]
    b = [draw(st.integers(-3, 5)) for _ in range(mu)]
    Ae = [[draw(ints) for _ in range(n)] for _ in range(me)]
    be = [draw(ints) for _ in range(me)]
    c = [draw(ints) for _ in range(n)]
    return c, A, b, Ae, be


@settings(max_examples=300, deadline=None)
@given(lps())
def test_certificates_check(prob):
    c, A, b, Ae, be = prob
    _check(c, A, b, Ae, be, solve(c, A, b, Ae, be))


@settings(max_examples=300, deadline=None)
@given(lps())
def test_agrees_with_highs(prob):
    # HiGHS presolve has reported "infeasible" for problems where x = 0 is feasible,
    # so the float reference runs without it
    linprog = pytest.importorskip("scipy.optimize").linprog
    c, A, b, Ae, be = prob
    r = solve(c, A, b, Ae, be)
    s = linprog([-x for x in c], A_ub=A, b_ub=b, A_eq=Ae or None, b_eq=be or None,
                bounds=[(0, None)] * len(c), method="highs", options={"presolve": False})
    expect = {0: OPTIMAL, 2: INFEASIBLE, 3: UNBOUNDED}[s.status]
    assert r.status == expect
    if r.status == OPTIMAL:
        assert abs(-s.fun - float(r.value)) < 1e-7


@settings(max_examples=50, deadline=None)
@given(lps())
def test_deterministic(prob):
    assert solve(*prob) == solve(*prob)
