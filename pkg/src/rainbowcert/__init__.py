"""Certify vanishing contact homology after contact +1 surgery on Legendrian knots."""

__version__ = "0.1.0"
