"""Chord actions versus face areas.

Stokes on a bounded face F gives  Area(F) = sum over corners of eps * A(c)
with eps = +1 at a positive corner and -1 at a negative one.  The z-lift
closes up exactly when  sum_F wind(F) * Area(F) = 0.
"""

import re
from dataclasses import dataclass
from fractions import Fraction

from . import lp
from .errors import BudgetExceeded, Infeasible, ParseError, UnboundedRequest
from .grading import frac_str
from .labels import match_label
from .words import canonical_rotation

DEFAULT_GAP = 100


@dataclass
class ActionSystem:
    chords: list  # crossing labels
    relations: dict  # face label -> {chord label: int}
    winding: dict  # face label -> winding number of the knot

    def nontrivial(self):
        """Relations with a negative coefficient (the ones worth printing)."""
        return {f: r for f, r in self.relations.items() if any(v < 0 for v in r.values())}

    def admissibility(self):
        """Coefficients of sum_F wind(F) Area(F) in terms of chord actions."""
        out = {}
        for f, rel in self.relations.items():
            w = self.winding.get(f, 0)
            for c, v in rel.items():
                out[c] = out.get(c, 0) + w * v
        return {c: v for c, v in out.items() if v}

    def area(self, face, actions):
        return sum(v * Fraction(actions[c]) for c, v in self.relations[face].items())

    def to_json(self):
        return {
            "relations": {f: dict(sorted(r.items())) for f, r in sorted(self.relations.items())},
            "winding": dict(sorted(self.winding.items())),
        }


def corner_relations(d):
    rel = {}
    for f in d.bounded_faces:
        r = {}
        for c, j in f.corners:
            lab = d.label(c)
            r[lab] = r.get(lab, 0) + (1 if d.corner_positive(c, j) else -1)
        rel[f.label] = {c: v for c, v in r.items() if v}
    wind = {k: v for k, v in d.winding_numbers().items() if k != "∞"}
    return ActionSystem([d.label(c) for c in d.crossing_order], rel, wind)


@dataclass
class AreaAssignment:
    actions: dict  # chord label -> Fraction
    areas: dict  # face label -> Fraction
    constraints: tuple = ()
    gap: int = DEFAULT_GAP
    eps: Fraction = Fraction(1, 1000)

    @property
    def min_action(self):
        return min(self.actions.values())

    def action(self, word):
        return sum(self.actions[c] for c in word)

    def to_json(self):
        return {
            "actions": {c: frac_str(v) for c, v in sorted(self.actions.items())},
            "areas": {f: frac_str(v) for f, v in sorted(self.areas.items())},
            "constraints": list(self.constraints),
            "gap": self.gap,
            "eps": frac_str(self.eps),
        }


# ---- constraint mini-language ----------------------------------------------
#   area(B1) <= eps            (eps: configured epsilon; actions are scaled so every chord has action >= 1)
#   act(a8) == act(a9) < act(a4) << act(a7)     (chains allowed; x << y means G*x <= y)
#   2*act(a8) + 1/2 <= act(a4)

_CMP = re.compile(r"(<<|>>|<=|>=|==|<|>|=)")
_TERM = re.compile(r"\s*([+-])?\s*(?:(\d+(?:/\d+)?)\s*\*?\s*)?(area\(([^)]*)\)|act\(([^)]*)\)|eps)?\s*")


def _parse_expr(text, faces, chords, eps):
    """Linear form -> ({('area'|'act', label): coeff}, constant)."""
    coeffs, const = {}, Fraction(0)
    pos, text = 0, text.strip()
    if not text:
        raise ParseError("empty expression")
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse {text[pos:]!r}")
        sign = -1 if m.group(1) == "-" else 1
        k = Fraction(m.group(2)) if m.group(2) else Fraction(1)
        atom = m.group(3)
        if atom is None:
            if m.group(2) is None:
                raise ParseError(f"cannot parse {text[pos:]!r}")
            const += sign * k
        elif atom == "eps":
            const += sign * k * eps
        elif m.group(4) is not None:
            f = match_label(m.group(4), faces)
            if f is None:
                raise ParseError(f"unknown face {m.group(4)!r}")
            coeffs[("area", f)] = coeffs.get(("area", f), 0) + sign * k
        else:
            c = match_label(m.group(5), chords)
            if c is None:
                raise ParseError(f"unknown chord {m.group(5)!r}")
            coeffs[("act", c)] = coeffs.get(("act", c), 0) + sign * k
        pos = m.end()
    return coeffs, const


def parse_constraint(text, faces, chords, eps, gap=DEFAULT_GAP):
    """Split a (chained) comparison into atoms (kind, lhs, rhs) with kind in <=, <, ==."""
    parts = _CMP.split(text)
    if len(parts) < 3 or len(parts) % 2 == 0:
        raise ParseError(f"constraint {text!r} needs a comparison")
    exprs = [_parse_expr(p, faces, chords, eps) for p in parts[0::2]]
    out = []
    for (lhs, op, rhs) in zip(exprs, parts[1::2], exprs[1:]):
        if op in (">", ">=", ">>"):
            lhs, rhs = rhs, lhs
            op = {">": "<", ">=": "<=", ">>": "<<"}[op]
        if op == "<<":
            lhs = ({k: v * gap for k, v in lhs[0].items()}, lhs[1] * gap)
            op = "<="
        if op == "=":
            op = "=="
        out.append((op, lhs, rhs))
    return out


def realize_areas(sys, constraints=(), gap=DEFAULT_GAP, eps=Fraction(1, 1000)):
    """Positive rational actions (all >= 1) with positive face areas meeting ``constraints``.

    Strict inequalities are handled by maximizing a common margin t <= 1;
    t = 0 at the optimum means the request is infeasible and the LP dual
    is returned as a certificate.
    """
    eps = Fraction(eps)
    chords = list(sys.chords)
    faces = sorted(sys.relations)
    idx = {c: i for i, c in enumerate(chords)}
    n = len(chords) + 1  # actions, then the margin t
    T = n - 1
    A_ub, b_ub, A_eq, b_eq, tags = [], [], [], [], []

    def linear(form):
        coeffs, const = form
        row = [Fraction(0)] * n
        for (kind, lab), v in coeffs.items():
            if kind == "act":
                row[idx[lab]] += v
            else:
                for c, e in sys.relations[lab].items():
                    row[idx[c]] += v * e
        return row, const

    for f in faces:  # area(F) >= t
        row, _ = linear(({("area", f): 1}, 0))
        r = [-v for v in row]
        r[T] = Fraction(1)
        A_ub.append(r), b_ub.append(Fraction(0)), tags.append(f"area({f}) > 0")
    for c in chords:  # act(c) >= 1
        r = [Fraction(0)] * n
        r[idx[c]] = Fraction(-1)
        A_ub.append(r), b_ub.append(Fraction(-1)), tags.append(f"act({c}) >= 1")
    r = [Fraction(0)] * n
    r[T] = Fraction(1)
    A_ub.append(r), b_ub.append(Fraction(1)), tags.append("margin <= 1")
    adm = sys.admissibility()
    if adm:
        row = [Fraction(0)] * n
        for c, v in adm.items():
            row[idx[c]] = Fraction(v)
        A_eq.append(row), b_eq.append(Fraction(0))
    for text in constraints:
        for op, lhs, rhs in parse_constraint(text, faces, chords, eps, gap):
            lrow, lc = linear(lhs)
            rrow, rc = linear(rhs)
            row = [a - b for a, b in zip(lrow, rrow)]
            bound = rc - lc
            if op == "==":
                A_eq.append(row), b_eq.append(bound)
                continue
            if op == "<":
                row[T] = Fraction(1)
            A_ub.append(row), b_ub.append(bound), tags.append(text)
    c = [Fraction(0)] * n
    c[T] = Fraction(1)
    res = lp.solve(c, A_ub, b_ub, A_eq, b_eq)
    if res.status == lp.UNBOUNDED:  # cannot happen with t <= 1, kept for safety
        raise UnboundedRequest("area request is unbounded")
    if res.status == lp.INFEASIBLE or res.value <= 0:
        y = res.dual_ub + res.dual_eq
        cert = {
            "multipliers": [frac_str(v) for v in y],
            "rows": tags + ["equality"] * len(b_eq),
        }
        raise Infeasible(cert, "area constraints cannot be met with all areas positive")
    actions = {ch: res.x[idx[ch]] for ch in chords}
    areas = {f: sys.area(f, actions) for f in faces}
    assert all(v > 0 for v in areas.values())
    return AreaAssignment(actions, areas, tuple(constraints), gap, eps)


def default_epsilon(assignment):
    return assignment.min_action / 1000


def _bound(assignment, target, epsilon, length):
    return assignment.action(target) + 3 * epsilon * (length + len(target))


def enumerate_candidates(d, assignment, target, epsilon=None, max_len=6, budget=1_000_000):
    """Cyclic words w != target with A(w) < A(target) + 3 eps (wl(w) + wl(target))."""
    target = tuple(d.label(d.crossing_id(c)) for c in ((target,) if isinstance(target, str) else target))
    eps = default_epsilon(assignment) if epsilon is None else Fraction(epsilon)
    letters = sorted(assignment.actions, key=lambda c: (assignment.actions[c], c))
    tcanon = canonical_rotation(target)
    found, nodes = set(), [0]
    # a letter costs at least min_action while the allowance grows by 3 eps,
    # so a prefix over budget can be cut whenever min_action >= 3 eps
    monotone = assignment.min_action >= 3 * eps

    def grow(prefix, total):
        for ch in letters:
            nodes[0] += 1
            if nodes[0] > budget:
                raise BudgetExceeded(f"candidate enumeration exceeded {budget} nodes")
            w = prefix + (ch,)
            s = total + assignment.actions[ch]
            ok = s < _bound(assignment, target, eps, len(w))
            if ok:
                cw = canonical_rotation(w)
                if cw != tcanon:
                    found.add(cw)
            elif monotone:
                break  # letters are sorted by action
            if len(w) < max_len and (ok or not monotone):
                grow(w, s)

    grow((), Fraction(0))
    return sorted(found, key=lambda w: (len(w), assignment.action(w), w))


def brute_force_candidates(d, assignment, target, epsilon, max_len):
    """Reference enumeration over every word (small diagrams only)."""
    import itertools

    target = tuple(d.label(d.crossing_id(c)) for c in ((target,) if isinstance(target, str) else target))
    tcanon = canonical_rotation(target)
    out = set()
    for n in range(1, max_len + 1):
        for w in itertools.product(sorted(assignment.actions), repeat=n):
            if assignment.action(w) < _bound(assignment, target, Fraction(epsilon), n):
                cw = canonical_rotation(w)
                if cw != tcanon:
                    out.add(cw)
    return sorted(out, key=lambda w: (len(w), assignment.action(w), w))
