"""Loose matching of user-typed labels (``alpha1``, ``α_1``, ``r1,2``) to canonical ones."""

import re


def normalize(name):
    s = str(name).strip().lower()
    s = s.replace("alpha", "α")
    s = re.sub(r"[\s_{}()]", "", s)
    return s


def match_label(name, candidates):
    key = normalize(name)
    for c in candidates:
        if normalize(c) == key:
            return c
    return None
