"""Positive braid words, closure components and classical invariants."""

import json
import re
from dataclasses import dataclass

from .errors import (
    GeneratorOutOfRange,
    NonPositiveGenerator,
    NotAKnot,
    OddParityViolation,
    ParseError,
)


@dataclass(frozen=True)
class BraidWord:
    strands: int
    letters: tuple
    cycles: tuple = ()

    @property
    def length(self):
        return len(self.letters)

    def to_json(self):
        return {"strands": self.strands, "word": list(self.letters)}

    def token(self):
        return f"p={self.strands} word={','.join(map(str, self.letters))}"


@dataclass(frozen=True)
class KnotInvariants:
    tb: int
    seifert_genus: int
    slice_genus_equal: bool
    tight_certified: bool

    def to_json(self):
        return {
            "tb": self.tb,
            "seifert_genus": self.seifert_genus,
            "slice_genus_equal": self.slice_genus_equal,
            "tight_certified": self.tight_certified,
        }


def permutation(letters, p):
    """Image of each start position after the braid; sigma_i swaps positions i, i+1."""
    pos = list(range(p))
    for i in letters:
        a, b = i - 1, i
        pos[a], pos[b] = pos[b], pos[a]
    # pos[k] = strand now sitting at position k; invert to get start -> end
    perm = [0] * p
    for end, start in enumerate(pos):
        perm[start] = end
    return perm


def cycle_structure(perm):
    seen = [False] * len(perm)
    cycles = []
    for s in range(len(perm)):
        if seen[s]:
            continue
        cyc = []
        k = s
        while not seen[k]:
            seen[k] = True
            cyc.append(k + 1)
            k = perm[k]
        cycles.append(tuple(cyc))
    return tuple(cycles)


def validate_braid(letters, p):
    p = int(p)
    if p < 1:
        raise GeneratorOutOfRange(f"strand count must be positive, got {p}")
    letters = tuple(int(x) for x in letters)
    for x in letters:
        if x <= 0:
            raise NonPositiveGenerator(f"generator {x} is not positive")
        if x > p - 1:
            raise GeneratorOutOfRange(f"generator {x} outside 1..{p - 1}")
    if not letters and p != 1:
        raise NotAKnot(p, f"empty word on {p} strands closes to a {p}-component unlink")
    cycles = cycle_structure(permutation(letters, p))
    if len(cycles) != 1:
        raise NotAKnot(len(cycles))
    return BraidWord(p, letters, cycles)


def thurston_bennequin(b):
    return b.length - b.strands


def tightness_report(b):
    w, p = b.length, b.strands
    if (w - p + 1) % 2:
        raise OddParityViolation(f"w - p + 1 = {w - p + 1} is odd; closure cannot be a knot")
    tb = w - p
    return KnotInvariants(
        tb=tb,
        seifert_genus=(w - p + 1) // 2,
        slice_genus_equal=True,
        tight_certified=tb != -1,
    )


def torus_braid(p, q):
    return validate_braid(list(range(1, p)) * q, p)


def twisted_braid(p, blocks):
    """Word (s_{p-p_1+1} ... s_{p-1})^{q_1} ... for blocks [(p_1, q_1), ...]."""
    letters = []
    for ps, qs in blocks:
        letters += list(range(p - ps + 1, p)) * qs
    return validate_braid(letters, p)


def block_structure(b):
    """Recover [(p_s, q_s), ...] if the word has the twisted-torus block form, else None."""
    p = b.strands
    letters = list(b.letters)
    blocks = []
    k = 0
    while k < len(letters):
        start = letters[k]
        col = list(range(start, p))
        if letters[k:k + len(col)] != col:
            return None
        ps = p - start + 1
        if blocks and blocks[-1][0] == ps:
            blocks[-1][1] += 1
        else:
            blocks.append([ps, 1])
        k += len(col)
    return [tuple(x) for x in blocks] or None


_TOKEN = re.compile(r"^\s*p\s*=\s*(\d+)\s*[;\s]\s*(?:word\s*=\s*)?([\d,\s]*)$")


def parse_braid(text):
    """Accept ``p=4 word=1,2,3``, ``p=2;1,1,1`` or a JSON object."""
    text = text.strip()
    if text.startswith("{"):
        try:
            obj = json.loads(text)
            return validate_braid(obj["word"], obj["strands"])
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"bad braid JSON: {exc}") from exc
    m = _TOKEN.match(text)
    if not m:
        raise ParseError(f"cannot parse braid {text!r}")
    word = [int(t) for t in re.split(r"[,\s]+", m.group(2).strip()) if t]
    return validate_braid(word, int(m.group(1)))
