"""Cyclic words of Reeb chords."""


def canonical_rotation(word):
    word = tuple(word)
    if not word:
        return word
    return min(word[k:] + word[:k] for k in range(len(word)))


def format_word(word):
    return "(" + " ".join(word) + ")"


def parse_word(text):
    """``a8a9`` style words need separators: accept ``a8 a9``, ``a8,a9`` or ``(a8 a9)``."""
    text = text.strip().strip("()")
    parts = [t for t in text.replace(",", " ").split() if t]
    return tuple(parts)
