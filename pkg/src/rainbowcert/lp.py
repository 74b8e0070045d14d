"""Exact two-phase simplex over Fractions.

Solves  max c.x  s.t.  A_ub x <= b_ub,  A_eq x = b_eq,  x >= 0
with Bland's rule.  Every result carries a certificate that can be checked
by plain arithmetic: dual multipliers at an optimum, a Farkas vector for
infeasibility, or a feasible point plus an improving ray when unbounded.
"""

from dataclasses import dataclass, field
from fractions import Fraction

OPTIMAL, INFEASIBLE, UNBOUNDED = "optimal", "infeasible", "unbounded"


@dataclass
class LPResult:
    status: str
    x: list = None
    value: Fraction = None
    dual_ub: list = field(default_factory=list)
    dual_eq: list = field(default_factory=list)
    ray: list = None


def _frac_rows(rows):
    return [[Fraction(v) for v in r] for r in rows]


def solve(c, A_ub=(), b_ub=(), A_eq=(), b_eq=()):
    c = [Fraction(v) for v in c]
    n = len(c)
    A_ub, A_eq = _frac_rows(A_ub), _frac_rows(A_eq)
    b_ub, b_eq = [Fraction(v) for v in b_ub], [Fraction(v) for v in b_eq]
    m_ub, m_eq = len(A_ub), len(A_eq)
    m = m_ub + m_eq
    for r in A_ub + A_eq:
        if len(r) != n:
            raise ValueError("constraint row length does not match objective")

    # columns: x (n) | slacks (m_ub) | artificials | rhs
    # Rows with a usable slack start with it basic; the rest get an artificial.
    n_s = n + m_ub
    rows, flip, art_rows = [], [], []
    for i in range(m):
        row = [Fraction(0)] * n_s
        if i < m_ub:
            row[:n] = A_ub[i]
            row[n + i] = Fraction(1)
            rhs = b_ub[i]
        else:
            row[:n] = A_eq[i - m_ub]
            rhs = b_eq[i - m_ub]
        s = -1 if rhs < 0 else 1
        if s < 0:
            row, rhs = [-v for v in row], -rhs
        rows.append((row, rhs))
        flip.append(s)
        if not (i < m_ub and s > 0):
            art_rows.append(i)
    width = n_s + len(art_rows)
    art_col = {i: n_s + k for k, i in enumerate(art_rows)}
    T, basis = [], []
    for i, (row, rhs) in enumerate(rows):
        full = row + [Fraction(0)] * len(art_rows) + [rhs]
        if i in art_col:
            full[art_col[i]] = Fraction(1)
            basis.append(art_col[i])
        else:
            basis.append(n + i)
        T.append(full)
    # column of the tableau that started as e_i, i.e. where B^-1 is read off
    unit_col = [art_col.get(i, n + i) for i in range(m)]

    def pivot(r, col, z):
        pr = T[r]
        pv = pr[col]
        if pv != 1:
            T[r] = pr = [v / pv for v in pr]
        nz = [k for k, v in enumerate(pr) if v]
        for i in range(m):
            f = T[i][col]
            if i != r and f:
                Ti = T[i]
                for k in nz:
                    Ti[k] -= f * pr[k]
        f = z[col]
        if f:
            for k in nz:
                z[k] -= f * pr[k]
        basis[r] = col

    def reduced(cost):
        # z_j = c_j - c_B B^-1 A_j, plus z[width] = -(objective value)
        z = list(cost) + [Fraction(0)]
        for i, b in enumerate(basis):
            cb = cost[b]
            if cb:
                for k, v in enumerate(T[i]):
                    if v:
                        z[k] -= cb * v
        return z

    def run(cost, allowed):
        """Maximize cost over the current tableau; returns an unbounded column or None."""
        z = reduced(cost)
        while True:
            enter = None
            for j in allowed:
                if z[j] > 0 and j not in basis:
                    enter = j
                    break
            if enter is None:
                return None
            leave, best = None, None
            for i in range(m):
                a = T[i][enter]
                if a > 0:
                    ratio = T[i][width] / a
                    if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                        leave, best = i, ratio
            if leave is None:
                return enter
            pivot(leave, enter, z)

    def duals(cost):
        y = []
        for k in range(m):
            col = unit_col[k]
            y.append(sum(cost[b] * T[i][col] for i, b in enumerate(basis) if cost[b]) * flip[k])
        return y

    if art_rows:
        cost1 = [Fraction(0)] * n_s + [Fraction(-1)] * len(art_rows)
        run(cost1, list(range(width)))
        infeas = sum(T[i][width] for i in range(m) if basis[i] >= n_s)
        if infeas > 0:
            # Farkas: y_ub >= 0, y^T A >= 0, y^T b < 0
            y = duals(cost1)
            return LPResult(INFEASIBLE, dual_ub=y[:m_ub], dual_eq=y[m_ub:])
        # drive zero-level artificials out of the basis where possible
        dummy = [Fraction(0)] * (width + 1)
        for i in range(m):
            if basis[i] >= n_s:
                for j in range(n_s):
                    if T[i][j] != 0:
                        pivot(i, j, dummy)
                        break

    cost2 = c + [Fraction(0)] * (width - n)
    enter = run(cost2, list(range(n_s)))
    x = [Fraction(0)] * n_s
    for i, b in enumerate(basis):
        if b < n_s:
            x[b] = T[i][width]
    if enter is not None:
        ray = [Fraction(0)] * n_s
        ray[enter] = Fraction(1)
        for i, b in enumerate(basis):
            if b < n_s:
                ray[b] = -T[i][enter]
        return LPResult(UNBOUNDED, x=x[:n], ray=ray[:n])
    value = sum(ci * xi for ci, xi in zip(c, x))
    y = duals(cost2)
    return LPResult(OPTIMAL, x=x[:n], value=value, dual_ub=y[:m_ub], dual_eq=y[m_ub:])


def check_optimal(c, A_ub, b_ub, res, A_eq=(), b_eq=()):
    """Weak duality check of an optimal result; returns a list of failures."""
    bad = []
    n = len(c)
    for i, r in enumerate(A_ub):
        if sum(Fraction(a) * x for a, x in zip(r, res.x)) > Fraction(b_ub[i]):
            bad.append(f"primal row {i} violated")
    for i, r in enumerate(A_eq):
        if sum(Fraction(a) * x for a, x in zip(r, res.x)) != Fraction(b_eq[i]):
            bad.append(f"primal equality {i} violated")
    if any(x < 0 for x in res.x):
        bad.append("negative primal entry")
    if any(y < 0 for y in res.dual_ub):
        bad.append("negative dual multiplier")
    for j in range(n):
        col = sum(Fraction(A_ub[i][j]) * res.dual_ub[i] for i in range(len(A_ub)))
        col += sum(Fraction(A_eq[i][j]) * res.dual_eq[i] for i in range(len(A_eq)))
        if col < Fraction(c[j]):
            bad.append(f"dual column {j} infeasible")
    dual_val = sum(Fraction(b) * y for b, y in zip(b_ub, res.dual_ub))
    dual_val += sum(Fraction(b) * y for b, y in zip(b_eq, res.dual_eq))
    if dual_val != res.value:
        bad.append("duality gap")
    return bad
