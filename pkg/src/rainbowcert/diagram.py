"""Lagrangian projections as oriented 4-valent rotation systems.

Every crossing has four ports numbered 0..3 counterclockwise; ports ``j`` and
``j + 2`` belong to the same strand.  An edge runs from a tail port to a head
port in the direction of the knot.  Faces are traced keeping the face on the
left: arriving at a crossing through port ``h`` the boundary leaves through
port ``h - 1``.  The wedge between ports ``j`` and ``j + 1`` is a corner; it is
a positive (Reeb sign +) corner exactly when port ``j`` lies on the over strand.
"""

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property

from .braid import thurston_bennequin
from .errors import EulerViolation, InconsistentWinding, MultiComponent, ParseError


@dataclass(frozen=True)
class Crossing:
    id: str
    over: tuple  # the two ports of the over strand, (j, j + 2)
    sign: int
    label: str


@dataclass(frozen=True)
class Edge:
    id: str
    tail: tuple  # (crossing id, port)
    head: tuple


@dataclass(frozen=True)
class Face:
    id: int
    darts: tuple  # ((edge id, +1 forward | -1 backward), ...)
    corners: tuple  # ((crossing id, j), ...) wedge between ports j and j+1
    label: str

    @property
    def corner_crossings(self):
        return tuple(c for c, _ in self.corners)


@dataclass(frozen=True)
class RsftDisk:
    face: str
    word: tuple


def port_sign(over_out, under_out):
    d = (under_out - over_out) % 4
    if d == 1:
        return 1
    if d == 3:
        return -1
    raise ParseError("over and under strands do not cross transversally")


class LagrangianDiagram:
    """Immutable labeled diagram.  ``meta`` carries construction data (braid, layout hints)."""

    def __init__(self, crossings, edges, face_labels, unbounded, meta=None):
        # face_labels: {(edge id, +1|-1): name}; unbounded: (edge id, +1|-1)
        self.crossings = {c.id: c for c in crossings}
        self.crossing_order = tuple(c.id for c in crossings)
        self.edges = {e.id: e for e in edges}
        self.edge_order = tuple(e.id for e in edges)
        self.meta = dict(meta or {})
        self._port_edge = {}
        for e in edges:
            for end, side in ((e.tail, "tail"), (e.head, "head")):
                if end[0] not in self.crossings:
                    raise ParseError(f"edge {e.id} references unknown crossing {end[0]}")
                if not 0 <= end[1] <= 3:
                    raise ParseError(f"edge {e.id} uses port {end[1]} outside 0..3")
                if end in self._port_edge:
                    raise EulerViolation(f"port {end} used twice")
                self._port_edge[end] = (e.id, side)
        for c in crossings:
            for j in range(4):
                if (c.id, j) not in self._port_edge:
                    raise EulerViolation(f"crossing {c.id} is not 4-valent (port {j} free)")
        self._check_orientation()
        self._trace_faces(face_labels, unbounded)
        self._check_knot()
        if len(self.faces) != len(self.crossings) + 2:
            raise EulerViolation(
                f"{len(self.faces)} faces for {len(self.crossings)} crossings; "
                "not a connected planar 4-valent map"
            )
        for c in crossings:
            if self.computed_sign(c.id) != c.sign:
                raise ParseError(f"crossing {c.id}: declared sign {c.sign} disagrees with geometry")

    # ---- structure -------------------------------------------------
    def _check_orientation(self):
        for c in self.crossings.values():
            a, b = c.over
            if (b - a) % 4 != 2:
                raise ParseError(f"crossing {c.id}: over ports {c.over} are not opposite")
            for j in (0, 1):
                s1 = self._port_edge[(c.id, j)][1]
                s2 = self._port_edge[(c.id, j + 2)][1]
                if s1 == s2:
                    raise ParseError(f"crossing {c.id}: strand through ports {j},{j + 2} is not oriented")

    def edge_at(self, crossing, port):
        return self._port_edge[(crossing, port)][0]

    def out_port(self, crossing, strand_port):
        """Outgoing port of the strand containing ``strand_port``."""
        for j in (strand_port, (strand_port + 2) % 4):
            if self._port_edge[(crossing, j)][1] == "tail":
                return j
        raise AssertionError

    def computed_sign(self, cid):
        c = self.crossings[cid]
        o = self.out_port(cid, c.over[0])
        u = self.out_port(cid, (c.over[0] + 1) % 4)
        return port_sign(o, u)

    def is_over_port(self, cid, port):
        return port in self.crossings[cid].over

    def next_edge(self, eid):
        """Edge following ``eid`` along the knot."""
        cid, h = self.edges[eid].head
        return self.edge_at(cid, (h + 2) % 4)

    def _check_knot(self):
        start = self.edge_order[0]
        seen = [start]
        e = self.next_edge(start)
        while e != start:
            seen.append(e)
            e = self.next_edge(e)
        if len(seen) != len(self.edges):
            comps, left = 1, set(self.edges) - set(seen)
            while left:
                s = min(left)
                e = s
                while True:
                    left.discard(e)
                    e = self.next_edge(e)
                    if e == s:
                        break
                comps += 1
            raise MultiComponent(comps)
        self.knot_cycle = tuple(seen)

    def _trace_faces(self, face_labels, unbounded):
        dart_face = {}
        faces = []
        for eid in self.edge_order:
            for d in (1, -1):
                if (eid, d) in dart_face:
                    continue
                darts, corners = [], []
                cur = (eid, d)
                while cur not in dart_face:
                    dart_face[cur] = len(faces)
                    darts.append(cur)
                    e = self.edges[cur[0]]
                    cid, h = e.head if cur[1] == 1 else e.tail
                    j = (h - 1) % 4
                    corners.append((cid, j))
                    nid, side = self._port_edge[(cid, j)]
                    cur = (nid, 1 if side == "tail" else -1)
                if cur != (eid, d):
                    raise EulerViolation("face tracing did not close")
                faces.append((tuple(darts), tuple(corners)))
        self._dart_face = dart_face
        if unbounded not in dart_face:
            raise ParseError(f"unbounded marker {unbounded} is not an edge side")
        self.base_face = dart_face[unbounded]
        names = {}
        for dart, name in face_labels.items():
            if dart not in dart_face:
                raise ParseError(f"face label on unknown edge side {dart}")
            fid = dart_face[dart]
            if fid in names and names[fid] != name:
                raise ParseError(f"face {fid} labeled both {names[fid]} and {name}")
            names[fid] = name
        if self.base_face in names:
            raise ParseError("unbounded face must not carry a bounded-face label")
        self.faces = tuple(
            Face(i, darts, corners, "∞" if i == self.base_face else names.get(i, f"F{i}"))
            for i, (darts, corners) in enumerate(faces)
        )
        labels = [f.label for f in self.faces]
        if len(set(labels)) != len(labels):
            raise ParseError("duplicate face labels")

    # ---- lookups ---------------------------------------------------
    def face_of(self, dart):
        return self.faces[self._dart_face[dart]]

    def left_face(self, eid):
        return self._dart_face[(eid, 1)]

    def right_face(self, eid):
        return self._dart_face[(eid, -1)]

    @cached_property
    def bounded_faces(self):
        return tuple(f for f in self.faces if f.id != self.base_face)

    @cached_property
    def face_by_label(self):
        return {f.label: f for f in self.faces}

    @cached_property
    def crossing_by_label(self):
        return {c.label: c.id for c in self.crossings.values()}

    def crossing_id(self, name):
        from .errors import UnknownCrossing
        from .labels import normalize

        if name in self.crossings:
            return name
        key = normalize(name)
        for c in self.crossings.values():
            if normalize(c.label) == key or normalize(c.id) == key:
                return c.id
        raise UnknownCrossing(f"no crossing named {name!r}")

    def label(self, cid):
        return self.crossings[cid].label

    def corner_positive(self, cid, j):
        return self.is_over_port(cid, j)

    @property
    def writhe(self):
        return sum(c.sign for c in self.crossings.values())

    @property
    def tb(self):
        return self.writhe

    @property
    def is_braid_closure(self):
        return "braid" in self.meta

    # ---- winding ---------------------------------------------------
    def chain_winding(self, mult):
        """Winding numbers of the 1-cycle sum(mult[e] * e) around every face.

        The face on the left of an edge exceeds the face on its right by the
        edge's multiplicity.
        """
        w = {self.base_face: 0}
        adj = {}
        for eid in self.edge_order:
            n = mult.get(eid, 0)
            lf, rf = self.left_face(eid), self.right_face(eid)
            adj.setdefault(rf, []).append((lf, n))
            adj.setdefault(lf, []).append((rf, -n))
        queue = deque([self.base_face])
        while queue:
            f = queue.popleft()
            for g, n in adj.get(f, ()):
                val = w[f] + n
                if g not in w:
                    w[g] = val
                    queue.append(g)
                elif w[g] != val:
                    raise InconsistentWinding(f"winding around face {g} is not well defined")
        return w

    @cached_property
    def knot_winding(self):
        return self.chain_winding({e: 1 for e in self.edge_order})

    def winding_numbers(self):
        return {self.faces[f].label: v for f, v in self.knot_winding.items()}

    # ---- export ----------------------------------------------------
    def to_text(self):
        from .diagram_io import dump_text

        return dump_text(self)


def winding_numbers(d):
    return d.winding_numbers()


def rsft_disks(d):
    """Bounded faces all of whose corners are positive, with their chord words.

    The word starts at the lexicographically least rotation so the output is
    canonical.
    """
    from .words import canonical_rotation

    out = []
    for f in d.bounded_faces:
        if all(d.corner_positive(c, j) for c, j in f.corners):
            word = tuple(d.label(c) for c, _ in f.corners)
            out.append(RsftDisk(f.label, canonical_rotation(word)))
    out.sort(key=lambda r: (len(r.word), r.face))
    return out


# ---- rainbow closures -------------------------------------------------------

NE, NW, SW, SE = 0, 1, 2, 3


def rainbow_closure_diagram(b):
    """Lagrangian projection of the Legendrian rainbow closure of ``b``.

    Strands run left to right through the braid (level 1 on top).  Level k
    leaves the braid, makes a clockwise curl at alpha_k (the curl bounds B_k),
    climbs and returns leftwards over the top as the k-th nested arc, whose
    inside is A_k.  Braid crossings have the descending strand over (sign +1);
    curl crossings have sign -1.
    """
    p, letters = b.strands, b.letters
    crossings, edges = [], []
    # open (crossing, port) where each level currently ends, scanning left to right
    first_in = {}
    last_out = {}
    row_count = {}
    meta_cross = {}
    ecount = [0]

    def new_edge(tail, head):
        ecount[0] += 1
        eid = f"e{ecount[0]}"
        edges.append(Edge(eid, tail, head))
        return eid

    for m, i in enumerate(letters):
        row_count[i] = row_count.get(i, 0) + 1
        cid = f"r{m + 1}"
        label = f"r_{{{i},{row_count[i]}}}"
        crossings.append(Crossing(cid, (NW, SE), 1, label))
        meta_cross[cid] = {"kind": "braid", "row": i, "col": row_count[i], "pos": m}
        for lvl, port in ((i, NW), (i + 1, SW)):
            if lvl in last_out:
                new_edge(last_out[lvl], (cid, port))
            else:
                first_in[lvl] = (cid, port)
        last_out[i] = (cid, NE)
        last_out[i + 1] = (cid, SE)

    arc_edges, loop_edges, branch_edges = {}, {}, {}
    for k in range(1, p + 1):
        cid = f"alpha{k}"
        crossings.append(Crossing(cid, (0, 2), -1, f"α_{k}"))
        meta_cross[cid] = {"kind": "rainbow", "level": k}
        # port 0: out to the arc, 1: in from the braid, 2: in from the loop, 3: out to the loop
        loop_edges[k] = new_edge((cid, 3), (cid, 2))
        tail = last_out.get(k, (cid, 0))
        head = first_in.get(k, (cid, 1))
        if k in last_out:
            branch_edges[k] = new_edge(last_out[k], (cid, 1))
            arc_edges[k] = new_edge((cid, 0), first_in[k])
        else:  # p = 1, empty word
            arc_edges[k] = new_edge((cid, 0), (cid, 1))
        del tail, head

    face_labels = {}
    for k in range(1, p + 1):
        face_labels[(arc_edges[k], 1)] = f"A_{k}"
        face_labels[(loop_edges[k], -1)] = f"B_{k}"
    meta = {
        "braid": b,
        "crossings": meta_cross,
        "arc_edges": arc_edges,
        "loop_edges": loop_edges,
        "branch_edges": branch_edges,
    }
    # braid faces: right wedge (ports SE -> NE) of every crossing but the last in its row
    pending = []
    for m, i in enumerate(letters):
        cid = f"r{m + 1}"
        info = meta_cross[cid]
        if info["col"] < row_count[i]:
            pending.append((cid, i, info["col"]))
    d = LagrangianDiagram(crossings, edges, face_labels, (arc_edges[p], -1), meta)
    corner_face = {}
    for f in d.faces:
        for c in f.corners:
            corner_face[c] = f.id
    extra = {}
    for cid, i, col in pending:
        fid = corner_face[(cid, SE)]
        extra[d.faces[fid].darts[0]] = f"R_{{{i},{col}}}"
    face_labels.update(extra)
    d = LagrangianDiagram(crossings, edges, face_labels, (arc_edges[p], -1), meta)
    assert d.writhe == thurston_bennequin(b)
    return d


def braid_row_faces(d, row):
    """Braid faces of a row, left to right."""
    out = []
    for f in d.bounded_faces:
        if f.label.startswith(f"R_{{{row},"):
            out.append(f)
    out.sort(key=lambda f: int(f.label.split(",")[1].rstrip("}")))
    return out


def first_row_faces(d):
    """Faces R_1, R_2, ... of the first rows of the blocks of a twisted torus braid.

    Block s with p_s strands has first row p - p_s + 1; its first-row faces are
    the faces of that row whose right corner is a crossing of block s.
    """
    from .braid import block_structure

    b = d.meta["braid"]
    blocks = block_structure(b)
    if blocks is None:
        raise ValueError("braid is not of twisted torus block form")
    p = b.strands
    info = d.meta["crossings"]
    # block index of each braid crossing position
    pos_block, k = {}, 0
    for s, (ps, qs) in enumerate(blocks):
        n = (ps - 1) * qs
        for m in range(k, k + n):
            pos_block[m] = s
        k += n
    corner_face = {}
    for f in d.faces:
        for c, j in f.corners:
            corner_face[(c, j)] = f
    out = []
    for s, (ps, _) in enumerate(blocks):
        row = p - ps + 1
        for cid in d.crossing_order:
            inf = info[cid]
            if inf["kind"] != "braid" or inf["row"] != row or pos_block[inf["pos"]] != s:
                continue
            # face to the left of this crossing in its row: wedge NW -> SW
            f = corner_face[(cid, NW)]
            if f.label.startswith("R_"):
                out.append(f)
    return out
