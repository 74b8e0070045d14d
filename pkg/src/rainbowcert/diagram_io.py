"""Line-oriented and JSON interchange formats for Lagrangian diagrams.

Text format, one record per line (``#`` starts a comment)::

    crossing <id> ends=<e1,e2,e3,e4> over=<i,j> sign=<+1|-1> label=<name>
    edge <id> from=<crossing>.<port> to=<crossing>.<port>
    unbounded <edge>:<L|R>
    facelabel <edge>:<L|R> <name>
    slicegenus <n>          (optional, declared knot data used for tightness)
    constraint <text>       (optional, default action ordering, see action.py)

Ports are numbered 1..4 counterclockwise and ``ends`` lists the edge at each
port; ``over`` names the two ports of the over strand.  ``<edge>:L`` is the
face on the left of the edge with respect to the knot orientation.
"""

import json
import re

from .diagram import Crossing, Edge, LagrangianDiagram
from .errors import ParseError, UnlabeledUnboundedFace

_KV = re.compile(r"(\w+)=(\S+)")


def _side(tok):
    m = re.fullmatch(r"(\S+):([LRlr])", tok)
    if not m:
        raise ParseError(f"bad edge side {tok!r}; expected <edge>:L or <edge>:R")
    return (m.group(1), 1 if m.group(2).upper() == "L" else -1)


def _end(tok):
    m = re.fullmatch(r"(\S+)\.(\d)", tok)
    if not m:
        raise ParseError(f"bad edge end {tok!r}; expected <crossing>.<port>")
    port = int(m.group(2))
    if not 1 <= port <= 4:
        raise ParseError(f"port {port} outside 1..4")
    return (m.group(1), port - 1)


def _sign(tok):
    if tok in ("+1", "1", "+"):
        return 1
    if tok in ("-1", "-"):
        return -1
    raise ParseError(f"bad sign {tok!r}")


def from_records(crossings, edges, unbounded, facelabels, meta=None):
    """Build from plain dicts (shared by the text and JSON readers)."""
    if unbounded is None:
        raise UnlabeledUnboundedFace("no 'unbounded' marker given")
    cs, ends = [], {}
    for c in crossings:
        try:
            over = tuple(int(x) - 1 for x in c["over"])
            if len(over) != 2 or len(c["ends"]) != 4:
                raise ParseError(f"crossing {c['id']}: need 4 ends and 2 over ports")
        except (KeyError, ValueError, TypeError) as exc:
            raise ParseError(f"bad crossing record {c}: {exc}") from exc
        cs.append(Crossing(c["id"], tuple(sorted(over)), int(c["sign"]), c.get("label", c["id"])))
        ends[c["id"]] = list(c["ends"])
    es = []
    for e in edges:
        try:
            tail, head = e["from"], e["to"]
        except KeyError as exc:
            raise ParseError(f"bad edge record {e}") from exc
        es.append(Edge(e["id"], tuple(tail), tuple(head)))
        for cid, port in (tail, head):
            if cid not in ends:
                raise ParseError(f"edge {e['id']} uses unknown crossing {cid}")
            if ends[cid][port] != e["id"]:
                raise ParseError(
                    f"crossing {cid} lists {ends[cid][port]} at port {port + 1}, edge {e['id']} claims it"
                )
    labels = {tuple(k): v for k, v in facelabels}
    return LagrangianDiagram(cs, es, labels, tuple(unbounded), meta)


def load_diagram(text):
    text = text.strip()
    if text.startswith("{"):
        return load_json(text)
    crossings, edges, facelabels = [], [], []
    unbounded, meta = None, {}
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, *rest = line.split()
        try:
            if head == "crossing":
                kv = dict(_KV.findall(" ".join(rest[1:])))
                crossings.append(
                    {
                        "id": rest[0],
                        "ends": kv["ends"].split(","),
                        "over": kv["over"].split(","),
                        "sign": _sign(kv["sign"]),
                        "label": kv.get("label", rest[0]),
                    }
                )
            elif head == "edge":
                kv = dict(_KV.findall(" ".join(rest[1:])))
                edges.append({"id": rest[0], "from": _end(kv["from"]), "to": _end(kv["to"])})
            elif head == "unbounded":
                unbounded = _side(rest[0])
            elif head == "facelabel":
                facelabels.append((_side(rest[0]), rest[1]))
            elif head == "slicegenus":
                meta["slice_genus"] = int(rest[0])
            elif head == "constraint":
                meta.setdefault("constraints", []).append(" ".join(rest))
            else:
                raise ParseError(f"unknown record type {head!r}")
        except (KeyError, IndexError, ValueError) as exc:
            raise ParseError(f"line {lineno}: incomplete record {raw.strip()!r}") from exc
        except ParseError as exc:
            raise ParseError(f"line {lineno}: {exc}") from exc
    return from_records(crossings, edges, unbounded, facelabels, meta)


def load_json(text):
    try:
        obj = json.loads(text) if isinstance(text, str) else text
        crossings = obj["crossings"]
        edges = [
            {"id": e["id"], "from": _end(e["from"]), "to": _end(e["to"])} for e in obj["edges"]
        ]
        unbounded = _side(obj["unbounded"]) if obj.get("unbounded") else None
        facelabels = [(_side(k), v) for k, v in obj.get("facelabels", {}).items()]
        meta = {"slice_genus": int(obj["slice_genus"])} if "slice_genus" in obj else {}
        if obj.get("constraints"):
            meta["constraints"] = list(obj["constraints"])
    except (KeyError, TypeError, ValueError) as exc:
        raise ParseError(f"bad diagram JSON: {exc}") from exc
    return from_records(crossings, edges, unbounded, facelabels, meta)


def _records(d):
    crossings = []
    for cid in d.crossing_order:
        c = d.crossings[cid]
        crossings.append(
            {
                "id": cid,
                "ends": [d.edge_at(cid, j) for j in range(4)],
                "over": [c.over[0] + 1, c.over[1] + 1],
                "sign": c.sign,
                "label": c.label,
            }
        )
    edges = []
    for eid in d.edge_order:
        e = d.edges[eid]
        edges.append(
            {"id": eid, "from": f"{e.tail[0]}.{e.tail[1] + 1}", "to": f"{e.head[0]}.{e.head[1] + 1}"}
        )
    sides = {}
    for f in d.faces:
        eid, direction = f.darts[0]
        key = f"{eid}:{'L' if direction == 1 else 'R'}"
        sides[f.id] = key
    facelabels = {sides[f.id]: f.label for f in d.bounded_faces}
    return crossings, edges, sides[d.base_face], facelabels


def dump_text(d):
    crossings, edges, unbounded, facelabels = _records(d)
    lines = []
    for c in crossings:
        sign = "+1" if c["sign"] > 0 else "-1"
        lines.append(
            f"crossing {c['id']} ends={','.join(c['ends'])} over={c['over'][0]},{c['over'][1]} "
            f"sign={sign} label={c['label']}"
        )
    for e in edges:
        lines.append(f"edge {e['id']} from={e['from']} to={e['to']}")
    lines.append(f"unbounded {unbounded}")
    for side, name in facelabels.items():
        lines.append(f"facelabel {side} {name}")
    if "slice_genus" in d.meta:
        lines.append(f"slicegenus {d.meta['slice_genus']}")
    for c in d.meta.get("constraints", ()):
        lines.append(f"constraint {c}")
    return "\n".join(lines) + "\n"


def dump_json(d):
    crossings, edges, unbounded, facelabels = _records(d)
    obj = {"crossings": crossings, "edges": edges, "unbounded": unbounded, "facelabels": facelabels}
    if "slice_genus" in d.meta:
        obj["slice_genus"] = d.meta["slice_genus"]
    if d.meta.get("constraints"):
        obj["constraints"] = list(d.meta["constraints"])
    return json.dumps(obj, sort_keys=True, indent=1)
