"""End-to-end certification: input -> diagram -> target disk -> candidates -> LP verdict."""

import hashlib
import json
from dataclasses import dataclass, field
from fractions import Fraction

from .action import corner_relations, default_epsilon, enumerate_candidates, realize_areas
from .braid import BraidWord, block_structure, tightness_report
from .diagram import LagrangianDiagram, rainbow_closure_diagram, rsft_disks
from .diagram_io import dump_text, load_diagram
from .errors import BudgetExceeded, Infeasible, NoRsftDisk
from .feasibility import build_system, compare_verdicts, integer_oracle, only_trivial
from .grading import frac_str
from .index import SINGLE_CHORD, degree_zero_generators
from .words import canonical_rotation, format_word

FORMAT = "rainbowcert/1"
SURGERY_NOTE = (
    "For every k >= 1, contact 1/k surgery on the knot is k contact +1 surgeries along k "
    "Legendrian push-offs; the +1 surgery on the first push-off already has vanishing contact "
    "homology, and vanishing persists under the remaining surgeries by Liouville functoriality "
    "of contact homology. Stated as a corollary, not recomputed."
)
TIGHT_CRITERION = "tb = 2 g_s - 1 > 0 (contact 1/k surgery on such knots is tight)"


@dataclass
class Config:
    target: str = None
    epsilon: Fraction = None
    gap: int = 100
    oracle_box: int = None
    constraints: tuple = None  # None: use the diagram's declared ordering, if any
    max_len: int = 6
    capping: str = "positive"

    def to_json(self):
        return {
            "target": self.target,
            "epsilon": None if self.epsilon is None else frac_str(self.epsilon),
            "gap": self.gap,
            "oracle_box": self.oracle_box,
            "constraints": None if self.constraints is None else list(self.constraints),
            "max_len": self.max_len,
            "capping": self.capping,
        }


def canonical_json(obj):
    return json.dumps(obj, sort_keys=True, ensure_ascii=False, indent=1) + "\n"


def digest(obj):
    return hashlib.sha256(canonical_json(obj).encode()).hexdigest()


# ---- inputs ------------------------------------------------------------------


def input_echo(source):
    if isinstance(source, BraidWord):
        return {"kind": "braid", "strands": source.strands, "word": list(source.letters)}
    text = dump_text(source)
    return {"kind": "diagram", "text": text, "sha256": hashlib.sha256(text.encode()).hexdigest()}


def diagram_from_echo(echo):
    if echo["kind"] == "braid":
        from .braid import validate_braid

        b = validate_braid(echo["word"], echo["strands"])
        return b, rainbow_closure_diagram(b)
    return None, load_diagram(echo["text"])


def knot_data(b, d):
    if b is not None:
        inv = tightness_report(b)
        return {
            "tb": inv.tb,
            "genus": inv.seifert_genus,
            "genus_source": "positive braid: g_s = g = (w - p + 1)/2",
            "tight": inv.tight_certified,
            "tight_criterion": TIGHT_CRITERION,
        }
    tb = d.tb
    g = d.meta.get("slice_genus")
    tight = g is not None and tb == 2 * g - 1 and tb > 0
    return {
        "tb": tb,
        "genus": g,
        "genus_source": "declared in diagram file" if g is not None else "unknown",
        "tight": tight,
        "tight_criterion": TIGHT_CRITERION,
    }


# ---- target and candidates ---------------------------------------------------


def _word_of(d, text):
    from .errors import UnknownCrossing
    from .words import parse_word

    try:  # a single label such as r_{1,2} contains a comma
        return (d.label(d.crossing_id(text.strip())),)
    except UnknownCrossing:
        pass
    return tuple(d.label(d.crossing_id(c)) for c in parse_word(text))


def preferred_target(d):
    """The target the argument is built around: alpha_1 for torus closures, alpha_2 for twisted ones."""
    if not d.is_braid_closure:
        return None
    blocks = block_structure(d.meta["braid"])
    if blocks is None:
        return None
    return ("α_1",) if len(blocks) == 1 else ("α_2",)


def select_target(d, disks, config, assignment=None):
    by_word = {canonical_rotation(x.word): x for x in disks}
    if config.target:
        w = canonical_rotation(_word_of(d, config.target))
        if w not in by_word:
            raise NoRsftDisk(f"target {format_word(w)} does not bound a disk with only positive corners")
        return by_word[w], "requested"
    pref = preferred_target(d)
    if pref is not None and canonical_rotation(pref) in by_word:
        return by_word[canonical_rotation(pref)], "preferred for this braid family"

    def key(x):
        act = assignment.action(x.word) if assignment is not None else 0
        return (len(x.word), act, x.word)

    return min(disks, key=key), "fewest chords, then smallest action"


def elimination_pass(sys, d):
    """Cheap eliminations in the style of the hand argument.

    A row (or a row sum over a braid row) with zero right-hand side whose
    active entries are all >= 0 forces x_j = 0 for every positive entry.
    Returns [(face or row sum, [eliminated variable indices])].  The LP
    remains the authority; this only explains it.
    """
    rows = [((f,), f) for f in sys.faces]
    prefixes = sorted({f.split(",")[0] for f in sys.faces if f.startswith("R_{")})
    for pre in prefixes:
        members = tuple(f for f in sys.faces if f.split(",")[0] == pre)
        rows.append((members, f"row sum {pre},*}}"))
    index = {f: i for i, f in enumerate(sys.faces)}
    active = set(range(len(sys.variables)))
    log = []
    changed = True
    while changed and active:
        changed = False
        for members, name in rows:
            rhs = sum(sys.rhs[index[f]] for f in members)
            if rhs != 0:
                continue
            coef = {j: sum(sys.matrix[index[f]][j] for f in members) for j in active}
            if all(v >= 0 for v in coef.values()):
                gone = sorted(j for j, v in coef.items() if v > 0)
                if gone:
                    active -= set(gone)
                    log.append((name, gone))
                    changed = True
    return log, sorted(active)


class Certificate:
    """Certificate payload; the constructor refuses to overclaim."""

    def __init__(self, data):
        c = data["conclusion"]
        if c["ch_vanishes"]:
            if data["verdict"]["kind"] != "OnlyTrivial":
                raise ValueError("ch_vanishes requires an OnlyTrivial verdict")
            if not data["target"].get("rsft_disk"):
                raise ValueError("ch_vanishes requires an RSFT disk for the target")
            if not data["policy"].get("preconditions_met"):
                raise ValueError("ch_vanishes requires the generator policy preconditions")
        if c["algebraically_overtwisted"] and not c["ch_vanishes"]:
            raise ValueError("algebraic overtwistedness is only concluded from vanishing")
        self.data = data

    @property
    def certified(self):
        return self.data["conclusion"]["ch_vanishes"]

    def to_json(self):
        return canonical_json(self.data)


def certify(source, config=None):
    config = config or Config()
    if isinstance(source, LagrangianDiagram) and source.is_braid_closure:
        source = source.meta["braid"]
    echo = input_echo(source)
    b, d = diagram_from_echo(echo)
    knot = knot_data(b, d)
    disks = rsft_disks(d)
    if not disks:
        raise NoRsftDisk("no bounded face has only positive corners")
    policy = degree_zero_generators(d)
    data = {
        "format": FORMAT,
        "input": echo,
        "config": config.to_json(),
        "knot": knot,
        "policy": {"name": policy.name, "reason": policy.reason, "preconditions_met": True},
        "surgery_note": SURGERY_NOTE,
    }

    assignment = None
    if policy.name != SINGLE_CHORD:
        constraints = config.constraints
        if constraints is None:
            constraints = tuple(d.meta.get("constraints", ()))
        eps_c = Fraction(config.epsilon) if config.epsilon is not None else Fraction(1, 1000)
        assignment = realize_areas(corner_relations(d), constraints, config.gap, eps_c)
        data["assignment"] = assignment.to_json()

    disk, why = select_target(d, disks, config, assignment)
    target = disk.word
    data["target"] = {"word": list(target), "face": disk.face, "rsft_disk": True, "selection": why}

    if policy.name == SINGLE_CHORD:
        tset = set(target)
        candidates = [(d.label(c),) for c in d.crossing_order if d.label(c) not in tset]
        data["candidate_rule"] = "every single-chord orbit other than the target"
    else:
        eps = default_epsilon(assignment) if config.epsilon is None else Fraction(config.epsilon)
        candidates = enumerate_candidates(d, assignment, target, eps, config.max_len)
        data["candidate_rule"] = "cyclic words with A(w) < A(target) + 3 eps (wl(w) + wl(target))"
        data["epsilon"] = frac_str(eps)
    data["candidates"] = [list(w) for w in candidates]

    sys = build_system(d, target, candidates, config.capping)
    data["system"] = sys.to_json()
    log, _ = elimination_pass(sys, d)
    data["eliminations"] = [
        {"by": name, "variables": [format_word(sys.variables[j]) for j in js]} for name, js in log
    ]
    try:
        verdict = only_trivial(sys)
        data["verdict"] = verdict.to_json(sys)
    except Infeasible as exc:
        verdict = None
        data["verdict"] = {"kind": "Infeasible", "farkas": exc.certificate}
    if verdict is not None and not verdict.only_trivial and config.oracle_box is not None:
        try:
            iv = integer_oracle(sys, config.oracle_box)
            _, note = compare_verdicts(sys, verdict, iv)
            data["integer_oracle"] = iv.to_json(sys) | {"box": config.oracle_box, "agreement": note}
        except BudgetExceeded as exc:
            data["integer_oracle"] = {"kind": "BudgetExceeded", "message": str(exc)}

    vanishes = verdict is not None and verdict.only_trivial
    data["conclusion"] = {
        "ch_vanishes": vanishes,
        "algebraically_overtwisted": vanishes,
        "tight": knot["tight"],
        "status": "certified" if vanishes else "inconclusive by this method",
    }
    return Certificate(data)


# ---- reports -----------------------------------------------------------------


def explain(cert):
    data = cert.data if isinstance(cert, Certificate) else cert
    c = data["conclusion"]
    if not data.get("candidates"):
        return (
            f"{format_word(data['target']['word'])}: no candidate outputs; "
            f"contact homology {'vanishes' if c['ch_vanishes'] else 'undecided'}.\n"
        )
    from .feasibility import FeasibilitySystem

    sys = FeasibilitySystem.from_json(data["system"])
    target = format_word(data["target"]["word"])
    lines = [
        f"knot: tb = {data['knot']['tb']}, genus = {data['knot']['genus']} ({data['knot']['genus_source']})",
        f"target {target} bounds the all-positive face {data['target']['face']} ({data['target']['selection']})",
        f"policy: {data['policy']['name']} ({data['policy']['reason']})",
        f"I{target} = {sys.rhs_vector().pretty()}",
        "candidate gradings:",
    ]
    tface = set(sys.rhs_vector().support())
    for j, w in enumerate(sys.variables):
        col = sys.column(j)
        extra = sorted(f for f in col.support() if col[f] > 0 and f not in tface)
        note = f"  positive outside the target's faces on {extra[0]}" if extra else ""
        lines.append(f"  I{format_word(w)} = {col.pretty()}{note}")
    for e in data.get("eliminations", ()):
        lines.append(f"{e['by']} forces zero exponent for {', '.join(e['variables'])}")
    v = data["verdict"]
    lines.append(f"verdict: {v['kind']}")
    if v.get("witness"):
        w = ", ".join(f"{k}^{Fraction(x)}" for k, x in v["witness"].items())
        lines.append(f"  witness monomial with exponents {w} passes the grading test")
    if c["ch_vanishes"]:
        lines.append(
            f"Hence the differential of q_{target} is ±1, contact homology vanishes and the "
            f"+1 surgery is algebraically overtwisted{'; it is also tight' if c['tight'] else ''}."
        )
    else:
        lines.append("Inconclusive by this method: no claim about contact homology is made.")
    return "\n".join(lines) + "\n"


# ---- batches -----------------------------------------------------------------


def family_members(family, pmax=6, qmax=7, rmax=3):
    from math import gcd

    from .braid import torus_braid, twisted_braid

    out = []
    if family == "torus":
        for p in range(2, pmax + 1):
            for q in range(p + 1, qmax + 1):
                if gcd(p, q) == 1:
                    out.append(((p, q), lambda p=p, q=q: torus_braid(p, q)))
    elif family in ("twisted", "n2"):
        for p in range(3, pmax + 1):
            for q in range(1, qmax + 1):
                for r in range(1, rmax + 1):
                    out.append(((p, q, r), lambda p=p, q=q, r=r: twisted_braid(p, [(p, q), (p - 1, r)])))
    else:
        raise ValueError(f"unknown family {family!r}")
    return out


def _certify_cached(args):
    key, make, config, cache_dir = args
    import os

    from .errors import CertError

    try:
        b = make()
    except CertError as exc:
        return key, {"error": type(exc).__name__, "message": str(exc)}
    echo = input_echo(b)
    name = digest({"input": echo, "config": config.to_json()})
    path = os.path.join(cache_dir, name + ".json") if cache_dir else None
    if path and os.path.exists(path):
        with open(path, encoding="utf-8") as fh:
            return key, json.load(fh)
    try:
        cert = certify(b, config).data
    except CertError as exc:
        return key, {"error": type(exc).__name__, "message": str(exc)}
    if path:
        os.makedirs(cache_dir, exist_ok=True)
        tmp = f"{path}.{os.getpid()}.tmp"
        with open(tmp, "w", encoding="utf-8") as fh:
            fh.write(canonical_json(cert))
        os.replace(tmp, path)
    return key, cert


def batch(family, config=None, pmax=6, qmax=7, rmax=3, cache_dir=None, workers=1):
    """Certify every member of a family; errors are recorded per item."""
    config = config or Config()
    jobs = [(key, make, config, cache_dir) for key, make in family_members(family, pmax, qmax, rmax)]
    if workers > 1:
        from concurrent.futures import ProcessPoolExecutor

        # lambdas do not pickle; rebuild members inside the workers by key
        with ProcessPoolExecutor(workers) as pool:
            results = list(pool.map(_batch_worker, [(family, k, config, cache_dir, pmax, qmax, rmax) for k, *_ in jobs]))
    else:
        results = [_certify_cached(j) for j in jobs]
    return results


def _batch_worker(args):
    family, key, config, cache_dir, pmax, qmax, rmax = args
    for k, make in family_members(family, pmax, qmax, rmax):
        if k == key:
            return _certify_cached((k, make, config, cache_dir))
    raise KeyError(key)


def summary_table(results):
    lines = [f"{'member':<14} {'tb':>4} {'verdict':<12} status"]
    for key, res in results:
        name = ",".join(map(str, key))
        if "error" in res:
            lines.append(f"{name:<14} {'-':>4} {'-':<12} {res['error']}: {res['message']}")
        else:
            lines.append(
                f"{name:<14} {res['knot']['tb']:>4} {res['verdict']['kind']:<12} {res['conclusion']['status']}"
            )
    return "\n".join(lines) + "\n"
