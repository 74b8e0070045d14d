"""Offline re-check of emitted certificates.

Everything is recomputed from the input echo with exact arithmetic: the
diagram, the target disk, every grading column, the assignment relations,
the candidate list and each dual or witness.  No LP is solved here.
"""

import json
from fractions import Fraction

from .action import corner_relations, enumerate_candidates, parse_constraint
from .diagram import rsft_disks
from .errors import CertError
from .feasibility import FeasibilitySystem, build_system, check_dual_certificate
from .index import SINGLE_CHORD, degree_zero_generators
from .pipeline import FORMAT, SURGERY_NOTE, diagram_from_echo, knot_data
from .words import canonical_rotation, format_word


def _fr(x):
    return Fraction(x)


def _check_assignment(data, d, bad):
    a = data.get("assignment")
    if a is None:
        bad.append("action-filter certificate without an area assignment")
        return None
    sys = corner_relations(d)
    actions = {c: _fr(v) for c, v in a["actions"].items()}
    if set(actions) != set(sys.chords):
        bad.append("assignment does not cover exactly the chords of the diagram")
        return None
    if any(v <= 0 for v in actions.values()):
        bad.append("non-positive chord action")
    for f in sys.relations:
        area = sys.area(f, actions)
        if area <= 0:
            bad.append(f"area of {f} is {area}, not positive")
        if _fr(a["areas"].get(f, "0")) != area:
            bad.append(f"recorded area of {f} disagrees with its corner relation")
    adm = sys.admissibility()
    if sum(v * actions[c] for c, v in adm.items()) != 0:
        bad.append("admissibility sum wind * area is not zero")
    faces = sorted(sys.relations)
    eps, gap = _fr(a["eps"]), int(a["gap"])
    for text in a["constraints"]:
        for op, lhs, rhs in parse_constraint(text, faces, sys.chords, eps, gap):

            def value(form):
                coeffs, const = form
                tot = const
                for (kind, lab), v in coeffs.items():
                    tot += v * (actions[lab] if kind == "act" else sys.area(lab, actions))
                return tot

            lv, rv = value(lhs), value(rhs)
            ok = {"==": lv == rv, "<=": lv <= rv, "<": lv < rv}[op]
            if not ok:
                bad.append(f"constraint {text!r} fails ({lv} {op} {rv} is false)")
    from .action import AreaAssignment

    return AreaAssignment(actions, {f: sys.area(f, actions) for f in faces}, tuple(a["constraints"]), gap, eps)


def verify(cert):
    """Return the list of failures (empty means the certificate checks out)."""
    data = json.loads(cert) if isinstance(cert, (str, bytes)) else cert
    bad = []
    try:
        if data.get("format") != FORMAT:
            return [f"unknown format {data.get('format')!r}"]
        b, d = diagram_from_echo(data["input"])
        if data["input"]["kind"] == "diagram":
            import hashlib

            if hashlib.sha256(data["input"]["text"].encode()).hexdigest() != data["input"]["sha256"]:
                bad.append("diagram digest mismatch")
        knot = knot_data(b, d)
        for k in ("tb", "genus", "tight"):
            if data["knot"].get(k) != knot[k]:
                bad.append(f"knot data {k}: recorded {data['knot'].get(k)}, recomputed {knot[k]}")
        if data.get("surgery_note") != SURGERY_NOTE:
            bad.append("surgery note altered")

        policy = degree_zero_generators(d)
        if data["policy"]["name"] != policy.name:
            bad.append("generator policy does not match the diagram type")

        target = tuple(data["target"]["word"])
        disks = {canonical_rotation(x.word): x.face for x in rsft_disks(d)}
        face = disks.get(canonical_rotation(target))
        if face is None:
            bad.append(f"target {format_word(target)} does not bound an all-positive face")
        elif face != data["target"]["face"]:
            bad.append(f"target face recorded as {data['target']['face']}, actual {face}")

        candidates = [tuple(w) for w in data["candidates"]]
        if policy.name == SINGLE_CHORD:
            expect = [(d.label(c),) for c in d.crossing_order if d.label(c) not in set(target)]
            if candidates != expect:
                bad.append("candidate list is not every other single chord")
        else:
            asg = _check_assignment(data, d, bad)
            if asg is not None:
                eps = _fr(data["epsilon"])
                expect = enumerate_candidates(d, asg, target, eps, data["config"]["max_len"])
                if candidates != expect:
                    bad.append("candidate list differs from the action enumeration")

        recorded = FeasibilitySystem.from_json(data["system"])
        sys = build_system(d, target, candidates, data["config"]["capping"])
        if recorded.variables != sys.variables or recorded.faces != sys.faces:
            bad.append("system variables or faces differ from recomputation")
        if recorded.rhs != sys.rhs:
            bad.append("system right-hand side differs from the target grading")
        for i, (r1, r2) in enumerate(zip(recorded.matrix, sys.matrix)):
            for j, (x, y) in enumerate(zip(r1, r2)):
                if x != y:
                    bad.append(f"matrix entry ({sys.faces[i]}, {format_word(sys.variables[j])}) is {x}, expected {y}")
        if len(recorded.matrix) != len(sys.matrix) or any(
            len(r1) != len(r2) for r1, r2 in zip(recorded.matrix, sys.matrix)
        ):
            bad.append("matrix shape differs")

        v = data["verdict"]
        names = [format_word(w) for w in sys.variables]
        if v["kind"] == "OnlyTrivial":
            duals = v.get("dual_certificates", {})
            for j, name in enumerate(names):
                if name not in duals:
                    bad.append(f"no dual certificate for {name}")
                    continue
                bad += check_dual_certificate(sys.matrix, sys.rhs, j, [_fr(y) for y in duals[name]])
        elif v["kind"] == "Witness":
            w = v.get("witness", {})
            x = [_fr(w.get(n, "0")) for n in names]
            if not any(x) or not sys.satisfied_by(x):
                bad.append("witness does not satisfy the system")
        vanishes = v["kind"] == "OnlyTrivial" and face is not None
        c = data["conclusion"]
        if c["ch_vanishes"] != vanishes:
            bad.append("ch_vanishes flag does not follow from the verdict")
        if c["algebraically_overtwisted"] != c["ch_vanishes"]:
            bad.append("overtwistedness flag inconsistent")
        if c["tight"] != knot["tight"]:
            bad.append("tightness flag inconsistent")
    except (CertError, KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        bad.append(f"malformed certificate: {type(exc).__name__}: {exc}")
    return bad
