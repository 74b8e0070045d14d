"""Positivity systems  I(target) - sum_j x_j I(candidate_j) >= 0,  x >= 0.

``only_trivial`` decides over the rationals with the exact simplex and keeps
a dual certificate per variable; ``integer_oracle`` brute-forces a box.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from math import lcm

import numpy as np

from . import lp
from .errors import BudgetExceeded, Infeasible
from .grading import GradingVector, frac_str, word_grading
from .words import format_word

ONLY_TRIVIAL, WITNESS = "OnlyTrivial", "Witness"
UNBOUNDED = "unbounded"


@dataclass
class FeasibilitySystem:
    variables: list  # candidate words (tuples of crossing labels)
    faces: list  # row labels
    matrix: list  # rows x columns of Fractions
    rhs: list  # Fractions, one per row

    def column(self, j):
        return GradingVector({f: self.matrix[i][j] for i, f in enumerate(self.faces)})

    def rhs_vector(self):
        return GradingVector(dict(zip(self.faces, self.rhs)))

    def residual(self, x):
        """rhs - M x, row by row."""
        return [
            self.rhs[i] - sum(self.matrix[i][j] * Fraction(x[j]) for j in range(len(x)))
            for i in range(len(self.faces))
        ]

    def satisfied_by(self, x):
        return all(v >= 0 for v in x) and all(r >= 0 for r in self.residual(x))

    def to_json(self):
        return {
            "variables": [list(w) for w in self.variables],
            "faces": list(self.faces),
            "matrix": [[frac_str(v) for v in row] for row in self.matrix],
            "rhs": [frac_str(v) for v in self.rhs],
        }

    @classmethod
    def from_json(cls, obj):
        return cls(
            [tuple(w) for w in obj["variables"]],
            list(obj["faces"]),
            [[Fraction(v) for v in row] for row in obj["matrix"]],
            [Fraction(v) for v in obj["rhs"]],
        )


@dataclass
class FeasibilityVerdict:
    kind: str
    witness: dict = None  # variable index -> Fraction
    maxima: dict = field(default_factory=dict)  # variable index -> Fraction or UNBOUNDED
    certificates: dict = field(default_factory=dict)  # variable index -> dual multipliers
    source: str = "lp"

    @property
    def only_trivial(self):
        return self.kind == ONLY_TRIVIAL

    def to_json(self, sys=None):
        def name(j):
            return format_word(sys.variables[j]) if sys is not None else str(j)

        out = {"kind": self.kind, "source": self.source}
        out["maxima"] = {
            name(j): (v if v == UNBOUNDED else frac_str(v)) for j, v in sorted(self.maxima.items())
        }
        if self.witness is not None:
            out["witness"] = {name(j): frac_str(v) for j, v in sorted(self.witness.items())}
        if self.certificates:
            out["dual_certificates"] = {
                name(j): [frac_str(v) for v in y] for j, y in sorted(self.certificates.items())
            }
        return out


def build_system(d, target, candidates, capping="positive"):
    rhs_g = word_grading(d, target, capping)
    cols = [word_grading(d, w, capping) for w in candidates]
    faces = [f.label for f in d.bounded_faces]
    matrix = [[c[f] for c in cols] for f in faces]
    return FeasibilitySystem(
        [tuple(d.label(d.crossing_id(c)) for c in _word(w)) for w in candidates],
        faces,
        matrix,
        [rhs_g[f] for f in faces],
    )


def _word(w):
    return (w,) if isinstance(w, str) else tuple(w)


def _maximize(sys, j):
    n = len(sys.variables)
    c = [Fraction(int(k == j)) for k in range(n)]
    return lp.solve(c, sys.matrix, sys.rhs)


def only_trivial(sys):
    n = len(sys.variables)
    if any(r < 0 for r in sys.rhs):
        # x = 0 already fails; nothing to maximize over
        res = lp.solve([Fraction(0)] * n, sys.matrix, sys.rhs)
        raise Infeasible(
            [frac_str(v) for v in res.dual_ub],
            "the target grading has a negative coefficient; the system has no solution",
        )
    maxima, certs, witness = {}, {}, None
    for j in range(n):
        res = _maximize(sys, j)
        if res.status == lp.UNBOUNDED:
            maxima[j] = UNBOUNDED
            if witness is None:
                pt = [a + b for a, b in zip(res.x, res.ray)]
                witness = pt
        else:
            maxima[j] = res.value
            if res.value == 0:
                certs[j] = res.dual_ub
            elif witness is None:
                witness = res.x
    if witness is None:
        return FeasibilityVerdict(ONLY_TRIVIAL, maxima=maxima, certificates=certs)
    assert sys.satisfied_by(witness), "simplex returned an infeasible witness"
    w = {k: v for k, v in enumerate(witness) if v != 0}
    return FeasibilityVerdict(WITNESS, witness=w, maxima=maxima, certificates=certs)


def check_dual_certificate(matrix, rhs, j, y):
    """Failures of ``y`` as a proof that max x_j = 0 (y >= 0, y^T M >= e_j, y^T rhs <= 0)."""
    bad = []
    y = [Fraction(v) for v in y]
    if len(y) != len(matrix):
        return [f"x{j}: certificate length {len(y)} != {len(matrix)} rows"]
    if any(v < 0 for v in y):
        bad.append(f"x{j}: negative multiplier")
    ncols = len(matrix[0]) if matrix else 0
    for k in range(ncols):
        s = sum(y[i] * matrix[i][k] for i in range(len(matrix)))
        if s < (1 if k == j else 0):
            bad.append(f"x{j}: column {k} gives {s}")
    b = sum(y[i] * rhs[i] for i in range(len(matrix)))
    if b > 0:
        bad.append(f"x{j}: bound {b} > 0")
    return bad


def _integerize(sys):
    """Scale each row to integers (same solution set)."""
    M, b = [], []
    for row, r in zip(sys.matrix, sys.rhs):
        den = lcm(*(Fraction(v).denominator for v in row + [r])) if row else Fraction(r).denominator
        M.append([int(Fraction(v) * den) for v in row])
        b.append(int(Fraction(r) * den))
    return np.array(M, dtype=np.int64).reshape(len(M), len(sys.variables)), np.array(b, dtype=np.int64)


def integer_oracle(sys, box_bound=10, budget=20_000_000, chunk=1 << 18, max_vars=12, max_box=20):
    n = len(sys.variables)
    if n > max_vars or box_bound > max_box:
        raise BudgetExceeded(f"{n} variables with box {box_bound} exceeds the oracle limits")
    total = (box_bound + 1) ** n
    if total > budget:
        raise BudgetExceeded(f"{total} lattice points exceed the budget {budget}")
    if n == 0:
        return FeasibilityVerdict(ONLY_TRIVIAL, source="integer")
    M, b = _integerize(sys)
    radix = box_bound + 1
    maxima = np.zeros(n, dtype=np.int64)
    witness = None
    for start in range(0, total, chunk):
        idx = np.arange(start, min(total, start + chunk), dtype=np.int64)
        X = np.empty((len(idx), n), dtype=np.int64)
        rem = idx.copy()
        for k in range(n - 1, -1, -1):
            X[:, k] = rem % radix
            rem //= radix
        ok = np.all(X @ M.T <= b, axis=1)
        if ok.any():
            good = X[ok]
            maxima = np.maximum(maxima, good.max(axis=0))
            if witness is None:
                nz = good[np.any(good != 0, axis=1)]
                if len(nz):
                    witness = nz[0]
    maxima = {j: Fraction(int(v)) for j, v in enumerate(maxima)}
    if witness is None:
        return FeasibilityVerdict(ONLY_TRIVIAL, maxima=maxima, source="integer")
    w = {j: Fraction(int(v)) for j, v in enumerate(witness) if v}
    return FeasibilityVerdict(WITNESS, witness=w, maxima=maxima, source="integer")


def compare_verdicts(sys, lp_verdict, int_verdict):
    """How the rational and integer verdicts relate: (agree, note).

    Same kind agrees.  A rational witness with no lattice point in the box is
    accepted only with a scaling note: for the common denominator D, D*x is an
    integer solution of the system with right-hand side D*rhs, which is
    re-checked here.  Anything else (integer witness against a rational
    OnlyTrivial) is a real disagreement.
    """
    if lp_verdict.kind == int_verdict.kind:
        return True, {"kind": "same", "verdict": lp_verdict.kind}
    if lp_verdict.kind != WITNESS:
        return False, {"kind": "conflict", "lp": lp_verdict.kind, "integer": int_verdict.kind}
    n = len(sys.variables)
    x = [Fraction(lp_verdict.witness.get(j, 0)) for j in range(n)]
    D = lcm(*(v.denominator for v in x))
    scaled = [v * D for v in x]
    ok = all(v >= 0 for v in scaled) and any(scaled) and all(
        sum(sys.matrix[i][j] * scaled[j] for j in range(n)) <= D * sys.rhs[i] for i in range(len(sys.faces))
    )
    note = {
        "kind": "scaling",
        "denominator": D,
        "integer_point": {format_word(sys.variables[j]): int(v) for j, v in enumerate(scaled) if v},
        "message": f"rational-only witness: {D}·x is integral for the right-hand side scaled by {D}",
    }
    return ok, note
