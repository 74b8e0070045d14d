"""SVG drawings of Lagrangian diagrams.

Rainbow closures use the grid coordinates of :mod:`layout`.  Loaded diagrams
get a straight-line planar drawing of their rotation system (each edge
subdivided twice so loops and parallel edges become simple paths).
"""

import math
from xml.sax.saxutils import escape

import networkx as nx

from .errors import LayoutFailure
from .layout import face_polygon, rainbow_layout


def _f(x):
    return f"{float(x):.3f}".rstrip("0").rstrip(".")


def interior_point(poly):
    """A point inside a simple polygon: middle of the widest scanline interval."""
    ys = sorted({float(y) for _, y in poly})
    pts = [(float(x), float(y)) for x, y in poly]
    best = None
    for y0, y1 in zip(ys, ys[1:]):
        y = (y0 + y1) / 2
        xs = []
        for (xa, ya), (xb, yb) in zip(pts, pts[1:] + pts[:1]):
            if (ya < y) != (yb < y):
                xs.append(xa + (y - ya) * (xb - xa) / (yb - ya))
        xs.sort()
        for a, b in zip(xs[::2], xs[1::2]):
            if best is None or b - a > best[0] + 1e-12:
                best = (b - a, ((a + b) / 2, y))
    if best is None:
        n = len(pts)
        return sum(x for x, _ in pts) / n, sum(y for _, y in pts) / n
    return best[1]


def _grid_drawing(d):
    """Straight-line coordinates for an arbitrary diagram via its planar embedding."""
    emb = nx.PlanarEmbedding()

    def nb(cid, port):
        eid = d.edge_at(cid, port)
        e = d.edges[eid]
        return ("e", eid, 0) if e.tail == (cid, port) else ("e", eid, 1)

    for cid in d.crossing_order:
        prev = None
        for port in range(4):
            v = nb(cid, port)
            if prev is None:
                emb.add_half_edge(("c", cid), v)
            else:
                emb.add_half_edge(("c", cid), v, cw=prev)
            prev = v
    for eid in d.edge_order:
        e = d.edges[eid]
        s0, s1 = ("e", eid, 0), ("e", eid, 1)
        emb.add_half_edge(s0, ("c", e.tail[0]))
        emb.add_half_edge(s0, s1, cw=("c", e.tail[0]))
        emb.add_half_edge(s1, s0)
        emb.add_half_edge(s1, ("c", e.head[0]), cw=s0)
    try:
        emb.check_structure()
        pos = nx.combinatorial_embedding_to_pos(emb)
    except nx.NetworkXException as exc:
        raise LayoutFailure(f"no planar drawing for this rotation system: {exc}") from exc

    # the drawing may come out mirrored; keep the diagram's chirality
    c0 = d.crossing_order[0]
    x0, y0 = pos[("c", c0)]
    ang = [math.atan2(pos[nb(c0, k)][1] - y0, pos[nb(c0, k)][0] - x0) for k in range(4)]
    turns = sum((ang[(k + 1) % 4] - ang[k]) % (2 * math.pi) for k in range(4))
    if abs(turns - 2 * math.pi) > 1e-9:
        pos = {k: (-x, y) for k, (x, y) in pos.items()}

    points = {cid: pos[("c", cid)] for cid in d.crossing_order}
    polylines = {}
    for eid in d.edge_order:
        e = d.edges[eid]
        polylines[eid] = [points[e.tail[0]], pos[("e", eid, 0)], pos[("e", eid, 1)], points[e.head[0]]]
    return points, polylines


def _label_markup(label):
    """``r_{1,2}`` -> r with a subscript 1,2."""
    if "_" not in label:
        return escape(label)
    base, sub = label.split("_", 1)
    sub = sub.strip("{}")
    return f'{escape(base)}<tspan baseline-shift="sub" font-size="70%">{escape(sub)}</tspan>'


def render_svg(d, scale=60, margin=40, curl="1/5"):
    """Deterministic SVG bytes with layers strands, crossings and labels."""
    if d.is_braid_closure:
        lay = rainbow_layout(d, curl, close=False)
        points, polylines = lay.points, lay.polylines
    else:
        points, polylines = _grid_drawing(d)
        scale = scale * 2 // 3

    xs = [float(x) for pl in polylines.values() for x, _ in pl]
    ys = [float(y) for pl in polylines.values() for _, y in pl]
    xmin, xmax, ymin, ymax = min(xs), max(xs), min(ys), max(ys)

    def tx(p):
        return _f((float(p[0]) - xmin) * scale + margin), _f((ymax - float(p[1])) * scale + margin)

    width = _f((xmax - xmin) * scale + 2 * margin)
    height = _f((ymax - ymin) * scale + 2 * margin)
    out = [
        '<?xml version="1.0" encoding="UTF-8"?>',
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{width}" height="{height}" '
        f'viewBox="0 0 {width} {height}">',
        '<g id="strands" fill="none" stroke="black" stroke-width="2">',
    ]
    for eid in d.edge_order:
        pts = " ".join("{},{}".format(*tx(p)) for p in polylines[eid])
        out.append(f'<polyline data-edge="{escape(eid)}" points="{pts}"/>')
    out.append("</g>")

    out.append('<g id="crossings" fill="none" stroke-linecap="round">')
    for cid in d.crossing_order:
        cx, cy = (float(v) for v in points[cid])
        ends = []
        for port in d.crossings[cid].over:
            eid = d.edge_at(cid, port)
            pl = polylines[eid]
            nxt = pl[1] if d.edges[eid].tail == (cid, port) else pl[-2]
            dx, dy = float(nxt[0]) - cx, float(nxt[1]) - cy
            n = math.hypot(dx, dy) or 1.0
            r = min(0.18, n / 2)
            ends.append((cx + dx / n * r, cy + dy / n * r))
        seg = " ".join("{},{}".format(*tx(p)) for p in ends)
        out.append(f'<g data-crossing="{escape(cid)}">')
        out.append(f'<polyline points="{seg}" stroke="white" stroke-width="8"/>')
        out.append(f'<polyline points="{seg}" stroke="black" stroke-width="2"/>')
        out.append("</g>")
    out.append("</g>")

    out.append('<g id="labels" font-family="serif" font-size="14" text-anchor="middle">')
    for cid in d.crossing_order:
        lab = d.label(cid)
        x, y = tx((float(points[cid][0]) + 0.22, float(points[cid][1]) + 0.22))
        out.append(f'<text class="chord" data-label="{escape(lab)}" x="{x}" y="{y}" fill="#b00">{_label_markup(lab)}</text>')
    for f in d.bounded_faces:
        if d.is_braid_closure:
            poly = face_polygon(d, lay, f)
        else:
            poly = []
            for eid, direction in f.darts:
                pl = polylines[eid] if direction == 1 else list(reversed(polylines[eid]))
                poly.extend(pl[:-1])
        x, y = tx(interior_point(poly))
        out.append(f'<text class="face" data-label="{escape(f.label)}" x="{x}" y="{y}" fill="#036">{_label_markup(f.label)}</text>')
    out.append("</g>")
    out.append("</svg>")
    return ("\n".join(out) + "\n").encode("utf-8")
