"""Rational intersection gradings of meridian, chords and cyclic chord words.

A push-out loop is recorded as runs of knot edges traversed parallel to the
knot (on its left), separated by chord jumps.  Its winding vector is that of
the 1-cycle of edge multiplicities; its linking number with the knot counts
the crossings where a parallel copy of the over strand passes over the under
strand, plus a fixed contribution at each chord jump.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import TbMinusOne, UnknownCrossing


class GradingVector:
    """Finitely supported map face label -> Fraction."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=None):
        self.coeffs = {k: Fraction(v) for k, v in (coeffs or {}).items() if v}

    def __getitem__(self, face):
        return self.coeffs.get(face, Fraction(0))

    def __add__(self, other):
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            out[k] = out.get(k, 0) + v
        return GradingVector(out)

    def __neg__(self):
        return GradingVector({k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, s):
        s = Fraction(s)
        return GradingVector({k: s * v for k, v in self.coeffs.items()})

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, GradingVector):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(frozenset(self.coeffs.items()))

    def __repr__(self):
        return f"GradingVector({self.to_json()})"

    def support(self):
        return set(self.coeffs)

    def is_nonnegative(self):
        return all(v >= 0 for v in self.coeffs.values())

    def to_json(self):
        return {k: frac_str(self.coeffs[k]) for k in sorted(self.coeffs)}

    @classmethod
    def from_json(cls, obj):
        return cls({k: Fraction(v) for k, v in obj.items()})

    def pretty(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            v = self.coeffs[k]
            mag = abs(v)
            coef = "" if mag == 1 else f"{mag}·"
            parts.append(("- " if v < 0 else "+ ") + coef + k)
        s = " ".join(parts)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]


def frac_str(x):
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class PushOutLoop:
    word: tuple  # crossing ids c_1..c_n
    runs: tuple  # runs[k]: edges from c_k to c_{k+1}, in traversal order
    direction: int  # +1 positive capping (forward runs), -1 negative capping

    def segments(self):
        """Alternating ('jump', crossing) / ('arc', edge, direction) records, cyclic."""
        out = []
        for k, c in enumerate(self.word):
            out.append(("jump", c))
            for e in self.runs[k]:
                out.append(("arc", e, self.direction))
        return out

    def multiplicities(self):
        mult = {}
        for run in self.runs:
            for e in run:
                mult[e] = mult.get(e, 0) + self.direction
        return mult


def _require_tb(d):
    if d.tb == -1:
        raise TbMinusOne("tb = -1: the rational intersection grading is undefined")


def _ids(d, word):
    if isinstance(word, str):
        word = (word,)
    out = []
    for c in word:
        try:
            out.append(d.crossing_id(c))
        except UnknownCrossing:
            raise
    if not out:
        raise UnknownCrossing("empty word")
    return tuple(out)


def over_out(d, c):
    return d.edge_at(c, d.out_port(c, d.crossings[c].over[0]))


def over_in(d, c):
    o = d.out_port(c, d.crossings[c].over[0])
    return d.edge_at(c, (o + 2) % 4)


def under_out(d, c):
    return d.edge_at(c, d.out_port(c, (d.crossings[c].over[0] + 1) % 4))


def under_in(d, c):
    u = d.out_port(c, (d.crossings[c].over[0] + 1) % 4)
    return d.edge_at(c, (u + 2) % 4)


def forward_path(d, first, last):
    path = [first]
    e = first
    while e != last:
        e = d.next_edge(e)
        path.append(e)
    return path


def pushout_loop(d, word, capping="positive"):
    """Left push-out of the cyclic word.

    Positive capping follows the knot from the top of c_k to the bottom of
    c_{k+1}; negative capping runs backwards from the top of c_k to the
    bottom of c_{k+1}.
    """
    ids = _ids(d, word)
    n = len(ids)
    runs = []
    for k in range(n):
        c, nxt = ids[k], ids[(k + 1) % n]
        if capping == "positive":
            runs.append(tuple(forward_path(d, over_out(d, c), under_in(d, nxt))))
        elif capping == "negative":
            fwd = forward_path(d, under_out(d, nxt), over_in(d, c))
            runs.append(tuple(reversed(fwd)))
        else:
            raise ValueError(f"capping must be 'positive' or 'negative', not {capping!r}")
    return PushOutLoop(ids, tuple(runs), 1 if capping == "positive" else -1)


def full_passes(d, loop):
    """Crossings passed straight through inside a run: [(crossing, port, direction)]."""
    out = []
    for run in loop.runs:
        fwd = run if loop.direction == 1 else tuple(reversed(run))
        for a, b in zip(fwd, fwd[1:]):
            c, h = d.edges[a].head
            out.append((c, h, loop.direction))
    return out


def loop_winding(d, loop):
    w = d.chain_winding(loop.multiplicities())
    return {d.faces[f].label: v for f, v in w.items()}


def linking_number(d, loop):
    lk = 0
    for c, h, direction in full_passes(d, loop):
        if d.is_over_port(c, h):
            lk += direction * d.crossings[c].sign
    for c in loop.word:
        s = d.crossings[c].sign
        lk += loop.direction * (1 + s) // 2
    return lk


def meridian_grading(d):
    _require_tb(d)
    scale = Fraction(-1, d.tb + 1)
    return GradingVector(
        {d.faces[f].label: scale * w for f, w in d.knot_winding.items() if f != d.base_face}
    )


def loop_grading(d, loop):
    _require_tb(d)
    wind = {k: v for k, v in loop_winding(d, loop).items() if k != "∞"}
    return GradingVector(wind) + linking_number(d, loop) * meridian_grading(d)


def word_grading(d, word, capping="positive"):
    return loop_grading(d, pushout_loop(d, word, capping))


def chord_grading(d, c, capping="positive"):
    return word_grading(d, (c,), capping)


def difference_grading(d, target, outputs, capping="positive"):
    g = word_grading(d, target, capping)
    for w in outputs:
        g = g - word_grading(d, w, capping)
    return g


def multiple_loop_grading(d, loop, copies):
    """Grading of ``copies`` disjoint parallel copies of ``loop``, divided by ``copies``."""
    mult = {e: copies * m for e, m in loop.multiplicities().items()}
    w = d.chain_winding(mult)
    wind = GradingVector({d.faces[f].label: v for f, v in w.items() if f != d.base_face})
    total = wind + (copies * linking_number(d, loop)) * meridian_grading(d)
    return total * Fraction(1, copies)


# ---- structural predicates on rainbow closures ------------------------------


def contains_interior_overhead_arc(d, loop):
    """Does the push-out run along the innermost rainbow arc (level 1)?"""
    arc = d.meta["arc_edges"][1]
    return any(arc in run for run in loop.runs)


def descending_columns(d):
    """Runs of braid crossings s_1 s_2 ... s_{p-1} at consecutive positions."""
    b = d.meta["braid"]
    at = {v["pos"]: c for c, v in d.meta["crossings"].items() if v["kind"] == "braid"}
    cols, m = [], 0
    while m < len(b.letters):
        if b.letters[m:m + b.strands - 1] == tuple(range(1, b.strands)):
            cols.append(tuple(at[m + k] for k in range(b.strands - 1)))
            m += b.strands - 1
        else:
            m += 1
    return cols


def contains_complete_descending_arc(d, loop):
    """Does the push-out follow the descending strand through a whole column without a jump?

    The descending strand of a column enters each of its crossings from the
    upper-left port (port 1) and leaves to the lower right.
    """
    passes = {(c, h) for c, h, _ in full_passes(d, loop)}
    return any(all((c, 1) in passes for c in col) for col in descending_columns(d))
