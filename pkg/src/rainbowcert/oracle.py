"""Coordinate realization check of the corner relations.

Lays a rainbow closure out in the plane, lifts it by dz = y dx, reads off
each chord height as z(over) - z(under) at the crossing point and compares
the shoelace area of every bounded face with its corner relation.
"""

from .action import corner_relations
from .layout import face_polygon, rainbow_layout, shoelace


def lift_heights(d, layout):
    """z-coordinate of each strand pass: {(crossing, port): z} for incoming ports."""
    z = 0.0
    out = {}
    for eid in d.knot_cycle:
        pl = layout.polylines[eid]
        for (x0, y0), (x1, y1) in zip(pl, pl[1:]):
            z += float((y0 + y1) * (x1 - x0) / 2)
        out[d.edges[eid].head] = z
    return out


def chord_heights(d, layout):
    zs = lift_heights(d, layout)
    heights = {}
    for cid in d.crossing_order:
        over_in = None
        for (c, port), val in zs.items():
            if c != cid:
                continue
            if d.is_over_port(c, port):
                over_in = val
            else:
                under_in = val
        heights[d.label(cid)] = over_in - under_in
    return heights


def relation_residuals(d, layout=None):
    """Per face |shoelace area - sum eps * height|, plus the heights and areas used."""
    layout = layout or rainbow_layout(d)
    heights = chord_heights(d, layout)
    sys = corner_relations(d)
    areas, resid = {}, {}
    for f in d.bounded_faces:
        a = float(shoelace(face_polygon(d, layout, f)))
        areas[f.label] = a
        pred = sum(v * heights[c] for c, v in sys.relations[f.label].items())
        resid[f.label] = abs(a - pred)
    return resid, heights, areas
