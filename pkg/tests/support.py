"""Shared fixtures data for the test modules."""

from fractions import Fraction
from functools import lru_cache
from importlib.resources import files
from math import gcd

from rainbowcert.braid import torus_braid, twisted_braid
from rainbowcert.diagram import rainbow_closure_diagram
from rainbowcert.diagram_io import load_diagram
from rainbowcert.errors import NotAKnot

F = Fraction
TORUS_PAIRS = [(p, q) for p in range(2, 7) for q in range(p + 1, 7) if gcd(p, q) == 1]
N2_GRID = [(p, q, r) for p in (3, 4, 5) for q in (2, 3, 4) for r in (1, 2, 3)]


@lru_cache(None)
def chekanov(side):
    return load_diagram(files("rainbowcert.data").joinpath(f"chekanov_{side}.ldg").read_text())


@lru_cache(None)
def torus(p, q):
    return rainbow_closure_diagram(torus_braid(p, q))


def n2_braid(p, q, r):
    return twisted_braid(p, [(p, q), (p - 1, r)])


@lru_cache(None)
def n2(p, q, r):
    try:
        return rainbow_closure_diagram(n2_braid(p, q, r))
    except NotAKnot:
        return None


def twisted_example():
    return rainbow_closure_diagram(twisted_braid(4, [(4, 3), (3, 3)]))


def braid_corpus():
    out = [torus(p, q) for p, q in TORUS_PAIRS]
    out += [d for d in (n2(*k) for k in N2_GRID) if d is not None]
    out.append(twisted_example())
    return out




def generated_systems(count=60, seed=20240611, max_vars=5):
    """Feasibility systems with small variable counts.

    Two thirds come from corpus diagrams (random target chord, random candidate
    words of length <= 2), the rest are random integer matrices with a
    nonnegative right-hand side.
    """
    import random

    from rainbowcert.feasibility import FeasibilitySystem, build_system

    rng = random.Random(seed)
    pool = [torus(2, 3), torus(2, 5), torus(3, 4), torus(3, 5), chekanov("left"), chekanov("right")]
    out = []
    while len(out) < count * 2 // 3:
        d = rng.choice(pool)
        labels = [d.label(c) for c in d.crossing_order]
        target = (rng.choice(labels),)
        n = rng.randint(1, max_vars)
        cands = set()
        while len(cands) < n:
            w = tuple(rng.choice(labels) for _ in range(rng.randint(1, 2)))
            if w != target:
                cands.add(w)
        sys = build_system(d, target, sorted(cands))
        if all(r >= 0 for r in sys.rhs):
            out.append(sys)
    while len(out) < count:
        n, m = rng.randint(1, max_vars), rng.randint(1, 6)
        M = [[Fraction(rng.randint(-4, 4), rng.choice((1, 2))) for _ in range(n)] for _ in range(m)]
        rhs = [Fraction(rng.randint(0, 4)) for _ in range(m)]
        out.append(FeasibilitySystem([(f"x{j}",) for j in range(n)], [f"F{i}" for i in range(m)], M, rhs))
    return out


def oracle_agreement(sys, box=10):
    from rainbowcert.feasibility import compare_verdicts, integer_oracle, only_trivial

    return compare_verdicts(sys, only_trivial(sys), integer_oracle(sys, box))


# criterion number -> (passed, detail); filled by test_acceptance, printed by conftest
ACCEPTANCE = {}
