"""Rotation numbers of chord pairs and the Conley-Zehnder lower bound.

On a rainbow closure the capping path from c_i to c_j (top of c_i forward
to the bottom of c_j) splits into a Type 1 piece, which runs from a braid
crossing to the right end of the braid (+pi/2), curl traversals (Type 2,
-3pi/2) and rainbow arcs (Type 3, +3pi/2).  Angles are kept as integers in
units of pi/2.
"""

from dataclasses import dataclass

from .errors import NotBraidClosure
from .grading import forward_path, over_out, under_in

SINGLE_CHORD = "single-chord"
ACTION_FILTER = "action-filter"


@dataclass(frozen=True)
class RotationData:
    pair: tuple
    theta: int  # units of pi/2
    rot: int
    arcs: tuple  # (type1, type2, type3) counts

    @property
    def theta_over_pi(self):
        return self.theta / 2


def _require(d):
    if not d.is_braid_closure:
        raise NotBraidClosure("rotation numbers are only computed for rainbow closures of positive braids")


def capping_path(d, ci, cj):
    return forward_path(d, over_out(d, ci), under_in(d, cj))


def rotation_number(d, ci, cj):
    _require(d)
    ci, cj = d.crossing_id(ci), d.crossing_id(cj)
    path = capping_path(d, ci, cj)
    loops = set(d.meta["loop_edges"].values())
    arcs = set(d.meta["arc_edges"].values())
    t1 = 1 if d.meta["crossings"][ci]["kind"] == "braid" else 0
    t2 = sum(1 for e in path if e in loops)
    t3 = sum(1 for e in path if e in arcs)
    theta = t1 - 3 * t2 + 3 * t3
    return RotationData((d.label(ci), d.label(cj)), theta, theta // 2, (t1, t2, t3))


def cz_index(d, word):
    _require(d)
    if isinstance(word, str):
        word = (word,)
    n = len(word)
    return sum(rotation_number(d, word[k], word[(k + 1) % n]).rot + 1 for k in range(n))


@dataclass(frozen=True)
class GeneratorPolicy:
    name: str
    reason: str

    @property
    def single_chord(self):
        return self.name == SINGLE_CHORD


def degree_zero_generators(d, braid_closure=None):
    """Which monomials the feasibility step has to consider.

    Positive-braid rainbow closures have SFT degree at least wl - 1 for every
    orbit, so degree-0 outputs are products of single-chord orbits.  Anything
    else falls back to filtering by action.
    """
    flag = d.is_braid_closure if braid_closure is None else braid_closure
    if flag:
        return GeneratorPolicy(SINGLE_CHORD, "positive braid closure: cz(word) >= length(word)")
    return GeneratorPolicy(ACTION_FILTER, "generic diagram: candidates bounded by action only")
