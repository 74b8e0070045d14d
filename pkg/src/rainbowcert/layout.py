"""Plane coordinates for rainbow closures.

Level k of the braid runs along y = -k; crossing number m sits at
(m + 1/2, -(i + 1/2)).  The curl of level k sits at x = w + 1 + 2k and its
arc rises to y = k before returning down the line x = -k.  The last curl is
stretched horizontally so that the integral of y dx around the knot vanishes,
which is what lets the lift z = int y dx close up.
"""

from dataclasses import dataclass
from fractions import Fraction

from .errors import LayoutFailure, NotBraidClosure


@dataclass
class Layout:
    points: dict  # crossing id -> (x, y)
    polylines: dict  # edge id -> [(x, y), ...] from tail crossing to head crossing
    stretch: Fraction = Fraction(1)

    def bbox(self):
        xs = [x for pl in self.polylines.values() for x, _ in pl]
        ys = [y for pl in self.polylines.values() for _, y in pl]
        return min(xs), min(ys), max(xs), max(ys)


def _anchors(d, c, stretch):
    """Port anchor points of every crossing."""
    meta = d.meta["crossings"]
    b = d.meta["braid"]
    w = len(b.letters)
    pts, anchors = {}, {}
    for cid, info in meta.items():
        if info["kind"] == "braid":
            m, i = info["pos"], info["row"]
            pts[cid] = (Fraction(2 * m + 1, 2), -Fraction(2 * i + 1, 2))
            anchors[cid] = {
                0: (Fraction(m + 1), Fraction(-i)),
                1: (Fraction(m), Fraction(-i)),
                2: (Fraction(m), Fraction(-i - 1)),
                3: (Fraction(m + 1), Fraction(-i - 1)),
            }
        else:
            k = info["level"]
            X = Fraction(w + 1 + 2 * k)
            lam = stretch if k == b.strands else 1
            pts[cid] = (X, -k - c)
            anchors[cid] = {
                0: (X + c, Fraction(-k)),
                1: (X - c, Fraction(-k)),
                2: (X - lam * c, -k - 2 * c),
                3: (X + lam * c, -k - 2 * c),
            }
    return pts, anchors


def _build(d, c, stretch):
    pts, anchors = _anchors(d, c, stretch)
    meta = d.meta
    arc_of = {e: k for k, e in meta["arc_edges"].items()}
    loop_of = {e: k for k, e in meta["loop_edges"].items()}
    b = meta["braid"]
    polylines = {}
    for eid in d.edge_order:
        e = d.edges[eid]
        (c1, p1), (c2, p2) = e.tail, e.head
        a1, a2 = anchors[c1][p1], anchors[c2][p2]
        mid = []
        if eid in arc_of:
            k = arc_of[eid]
            top = Fraction(k)
            mid = [(a1[0], top), (Fraction(-k), top), (Fraction(-k), a2[1])]
        elif eid in loop_of:
            k = loop_of[eid]
            X = pts[c1][0]
            mid = [(X, -k - 3 * c)]
        polylines[eid] = [pts[c1], a1] + mid + [a2, pts[c2]]
    return Layout(pts, polylines, stretch)


def _y_dx(polylines):
    total = Fraction(0)
    for pl in polylines.values():
        for (x0, y0), (x1, y1) in zip(pl, pl[1:]):
            total += (y0 + y1) * (x1 - x0) / 2
    return total


def rainbow_layout(d, curl=Fraction(1, 5), close=True):
    """Exact rational coordinates; with ``close`` the lift condition is imposed.

    Closing can stretch the last curl a long way, so drawings use close=False.
    """
    if not d.is_braid_closure:
        raise NotBraidClosure("grid layout needs a rainbow closure")
    curl = Fraction(curl)
    if not close:
        return _build(d, curl, Fraction(1))
    t1 = _y_dx(_build(d, curl, Fraction(1)).polylines)
    t2 = _y_dx(_build(d, curl, Fraction(2)).polylines)
    slope = t2 - t1
    if slope == 0:
        raise LayoutFailure("stretching the last curl does not change the enclosed area")
    lam = 1 - t1 / slope
    if lam <= 0:
        raise LayoutFailure(f"closing the lift needs a curl stretch of {lam}")
    lay = _build(d, curl, lam)
    assert _y_dx(lay.polylines) == 0
    return lay


def face_polygon(d, layout, face):
    pts = []
    for eid, direction in face.darts:
        pl = layout.polylines[eid]
        seq = pl if direction == 1 else list(reversed(pl))
        pts.extend(seq[:-1])
    return pts


def shoelace(poly):
    s = Fraction(0)
    for (x0, y0), (x1, y1) in zip(poly, poly[1:] + poly[:1]):
        s += x0 * y1 - x1 * y0
    return s / 2
