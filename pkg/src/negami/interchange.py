"""Versioned JSON documents for graphs, schemes, covers and certificates.

Every document is ``{"format_version": 1, "kind": ..., "payload": ...}``.
Ids are explicit (never positional); tuple ids are written as JSON arrays
and read back as tuples.  Darts are written as ``[edge_id, end]``.  Unknown
or missing fields are rejected.
"""
from __future__ import annotations

import json
from typing import Any

from .covering import CoverMap, build_cover
from .errors import NegamiError
from .graph_core import EmbeddingScheme, Graph, SurfaceId, build_graph, make_scheme
from .negami_props import QuotientReport, SignAssignment

FORMAT_VERSION = 1
KINDS = ("graph", "scheme", "cover", "signs", "quotient_report", "results_table", "bundle")


class InterchangeError(NegamiError, ValueError):
    """Malformed interchange document."""


def _freeze(x):
    if isinstance(x, list):
        return tuple(_freeze(y) for y in x)
    if isinstance(x, dict):
        raise InterchangeError("objects are not valid ids")
    return x


def _thaw(x):
    if isinstance(x, tuple):
        return [_thaw(y) for y in x]
    return x


def _fields(obj, required: tuple, optional: tuple = (), where: str = "payload") -> dict:
    if not isinstance(obj, dict):
        raise InterchangeError(f"{where} must be an object")
    unknown = sorted(set(obj) - set(required) - set(optional))
    if unknown:
        raise InterchangeError(f"unknown field {unknown[0]!r} in {where}")
    missing = [k for k in required if k not in obj]
    if missing:
        raise InterchangeError(f"missing field {missing[0]!r} in {where}")
    return obj


def _list(obj, where: str) -> list:
    if not isinstance(obj, list):
        raise InterchangeError(f"{where} must be an array")
    return obj


# --- graph -----------------------------------------------------------------

def graph_payload(g: Graph) -> dict:
    return {
        "vertices": [_thaw(v) for v in g.vertices],
        "edges": [{"id": _thaw(e), "ends": [_thaw(u), _thaw(w)]}
                  for e, (u, w) in zip(g.edges, (g.edge_ends(i) for i in range(len(g.edges))))],
    }


def graph_from_payload(p) -> Graph:
    _fields(p, ("vertices", "edges"), where="graph")
    verts = [_freeze(v) for v in _list(p["vertices"], "vertices")]
    ids, pairs = [], []
    for e in _list(p["edges"], "edges"):
        _fields(e, ("id", "ends"), where="edge")
        ends = _list(e["ends"], "edge ends")
        ids.append(_freeze(e["id"]))
        pairs.append(tuple(_freeze(v) for v in ends))
    return build_graph(verts, pairs, edge_ids=ids)


def _dart_out(g: Graph, d: int) -> list:
    e, end = g.dart_id(d)
    return [_thaw(e), end]


def _dart_in(g: Graph, x) -> int:
    x = _list(x, "dart")
    if len(x) != 2 or x[1] not in (0, 1):
        raise InterchangeError(f"dart must be [edge_id, 0|1], got {x!r}")
    try:
        return g.dart_from_id(_freeze(x[0]), x[1])
    except (KeyError, ValueError) as exc:
        raise InterchangeError(f"unknown dart {x!r}") from exc


# --- scheme ----------------------------------------------------------------

def scheme_payload(s: EmbeddingScheme) -> dict:
    g = s.graph
    return {
        "graph": graph_payload(g),
        "rotation": [{"vertex": _thaw(v), "darts": [_dart_out(g, d) for d in s.rotation_at(v)]}
                     for v in g.vertices],
        "signature": [{"edge": _thaw(e), "sign": sg} for e, sg in zip(g.edges, s.signature)],
    }


def scheme_from_payload(p, graph: Graph | None = None) -> EmbeddingScheme:
    _fields(p, ("graph", "rotation", "signature"), where="scheme")
    g = graph_from_payload(p["graph"])
    if graph is not None and g != graph:
        raise InterchangeError("scheme graph differs from the expected graph")
    rotation = {}
    for r in _list(p["rotation"], "rotation"):
        _fields(r, ("vertex", "darts"), where="rotation entry")
        rotation[_freeze(r["vertex"])] = [_dart_in(g, x) for x in _list(r["darts"], "darts")]
    sig = {}
    for r in _list(p["signature"], "signature"):
        _fields(r, ("edge", "sign"), where="signature entry")
        sig[_freeze(r["edge"])] = r["sign"]
    if set(sig) != set(g.edges):
        raise InterchangeError("signature must list every edge exactly once")
    return make_scheme(g, rotation, [sig[e] for e in g.edges])


# --- cover -----------------------------------------------------------------

def cover_payload(c: CoverMap) -> dict:
    src, tgt = c.source, c.target
    return {
        "source": graph_payload(src),
        "target": graph_payload(tgt),
        "vertex_map": [[_thaw(u), _thaw(c.vertex_map[u])] for u in src.vertices],
        "dart_map": [{"dart": _dart_out(src, d), "image": _dart_out(tgt, c.dart_map[d])}
                     for d in src.darts if d % 2 == 0],
    }


def cover_from_payload(p) -> CoverMap:
    _fields(p, ("source", "target", "vertex_map", "dart_map"), where="cover")
    src = graph_from_payload(p["source"])
    tgt = graph_from_payload(p["target"])
    vmap = {}
    for pair in _list(p["vertex_map"], "vertex_map"):
        pair = _list(pair, "vertex_map entry")
        if len(pair) != 2:
            raise InterchangeError("vertex_map entries are [source, target] pairs")
        vmap[_freeze(pair[0])] = _freeze(pair[1])
    phi = {}
    for r in _list(p["dart_map"], "dart_map"):
        _fields(r, ("dart", "image"), where="dart_map entry")
        d, x = _dart_in(src, r["dart"]), _dart_in(tgt, r["image"])
        phi[d], phi[d ^ 1] = x, x ^ 1
    return build_cover(src, tgt, phi, vertex_map=vmap)


# --- signs -----------------------------------------------------------------

def signs_payload(s: SignAssignment) -> dict:
    return {
        "signs": [{"vertex": _thaw(v), "sign": sg} for v, sg in s.sign.items()],
        "ambiguous": [_thaw(v) for v in s.sign if v in s.ambiguous_vertices],
    }


def signs_from_payload(p) -> SignAssignment:
    _fields(p, ("signs", "ambiguous"), where="signs")
    sign = {}
    for r in _list(p["signs"], "signs"):
        _fields(r, ("vertex", "sign"), where="sign entry")
        if r["sign"] not in (1, -1):
            raise InterchangeError(f"sign must be +1 or -1, got {r['sign']!r}")
        sign[_freeze(r["vertex"])] = r["sign"]
    amb = frozenset(_freeze(v) for v in _list(p["ambiguous"], "ambiguous"))
    return SignAssignment(sign, amb)


# --- quotient report -------------------------------------------------------

def quotient_payload(q: QuotientReport) -> dict:
    return {
        "scheme": scheme_payload(q.scheme),
        "surface": {"euler_characteristic": q.surface.euler_characteristic,
                    "orientable": q.surface.orientable, "name": q.surface.describe()},
        "sign_verdict": q.sign_verdict,
        "degree": q.degree,
        "windings": list(q.windings),
        "face_map": list(q.face_map),
        "local_degrees": [[_thaw(v), d] for v, d in q.local_degrees.items()],
        "signs": signs_payload(q.signs),
        "euler_identity": q.euler_identity,
    }


def quotient_from_payload(p) -> QuotientReport:
    _fields(p, ("scheme", "surface", "sign_verdict", "degree", "windings", "face_map",
                "local_degrees", "signs", "euler_identity"), where="quotient_report")
    surf = _fields(p["surface"], ("euler_characteristic", "orientable", "name"), where="surface")
    surface = SurfaceId(surf["euler_characteristic"], surf["orientable"])
    if surface.describe() != surf["name"]:
        raise InterchangeError(f"surface name {surf['name']!r} does not match its invariants")
    return QuotientReport(
        scheme_from_payload(p["scheme"]), surface, p["sign_verdict"], p["degree"],
        tuple(p["windings"]), tuple(p["face_map"]),
        {_freeze(v): d for v, d in p["local_degrees"]},
        signs_from_payload(p["signs"]), p["euler_identity"])


# --- bundle and results ----------------------------------------------------

_BUNDLE_PARTS = {
    "cover": (cover_payload, cover_from_payload),
    "scheme": (scheme_payload, scheme_from_payload),
    "signs": (signs_payload, signs_from_payload),
    "quotient": (quotient_payload, quotient_from_payload),
}
_BUNDLE_PLAIN = ("name", "note", "case", "verdict")


def bundle_payload(bundle: dict) -> dict:
    out = {}
    for k, v in bundle.items():
        if v is None:
            continue
        if k in _BUNDLE_PARTS:
            out[k] = _BUNDLE_PARTS[k][0](v)
        elif k in _BUNDLE_PLAIN:
            out[k] = v
        else:
            raise InterchangeError(f"unknown bundle part {k!r}")
    return out


def bundle_from_payload(p) -> dict:
    _fields(p, (), tuple(_BUNDLE_PARTS) + _BUNDLE_PLAIN, where="bundle")
    return {k: (_BUNDLE_PARTS[k][1](v) if k in _BUNDLE_PARTS else v) for k, v in p.items()}


def results_payload(table: dict) -> dict:
    return {"graph": graph_payload(table["graph"]), "rows": list(table["rows"])}


def results_from_payload(p) -> dict:
    _fields(p, ("graph", "rows"), where="results_table")
    return {"graph": graph_from_payload(p["graph"]), "rows": _list(p["rows"], "rows")}


_CODECS = {
    "graph": (graph_payload, graph_from_payload),
    "scheme": (scheme_payload, scheme_from_payload),
    "cover": (cover_payload, cover_from_payload),
    "signs": (signs_payload, signs_from_payload),
    "quotient_report": (quotient_payload, quotient_from_payload),
    "results_table": (results_payload, results_from_payload),
    "bundle": (bundle_payload, bundle_from_payload),
}


def kind_of(obj) -> str:
    if isinstance(obj, Graph):
        return "graph"
    if isinstance(obj, EmbeddingScheme):
        return "scheme"
    if isinstance(obj, CoverMap):
        return "cover"
    if isinstance(obj, SignAssignment):
        return "signs"
    if isinstance(obj, QuotientReport):
        return "quotient_report"
    raise InterchangeError(f"cannot infer a document kind for {type(obj).__name__}")


def to_document(obj, kind: str | None = None) -> dict:
    kind = kind or kind_of(obj)
    if kind not in _CODECS:
        raise InterchangeError(f"unknown kind {kind!r}")
    return {"format_version": FORMAT_VERSION, "kind": kind, "payload": _CODECS[kind][0](obj)}


def from_document(doc) -> tuple[str, Any]:
    _fields(doc, ("format_version", "kind", "payload"), where="document")
    if doc["format_version"] != FORMAT_VERSION:
        raise InterchangeError(f"unsupported format_version {doc['format_version']!r}")
    kind = doc["kind"]
    if kind not in _CODECS:
        raise InterchangeError(f"unknown kind {kind!r}")
    try:
        return kind, _CODECS[kind][1](doc["payload"])
    except InterchangeError:
        raise
    except (TypeError, KeyError, IndexError, AttributeError) as exc:
        raise InterchangeError(f"malformed {kind} payload: {exc}") from exc


def emit(obj, kind: str | None = None, compact: bool = False) -> str:
    doc = to_document(obj, kind)
    if compact:
        return json.dumps(doc, sort_keys=True, separators=(",", ":"))
    return json.dumps(doc, sort_keys=True, indent=2)


def parse(text: str) -> tuple[str, Any]:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InterchangeError(f"not valid JSON: {exc}") from exc
    return from_document(doc)


def load(path) -> tuple[str, Any]:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def dump(obj, path, kind: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(emit(obj, kind) + "\n")


# --- diagram export --------------------------------------------------------

def _dot_id(x) -> str:
    return json.dumps(str(x))


def to_dot(obj: Graph | EmbeddingScheme) -> str:
    """Graphviz text.  For a scheme each vertex is a record whose ports list
    its darts in rotation order; negative edges are dashed and red."""
    scheme = obj if isinstance(obj, EmbeddingScheme) else None
    g = scheme.graph if scheme else obj
    lines = ["graph G {"]
    port = {}
    if scheme:
        lines.append("  node [shape=record];")
        for v in g.vertices:
            rot = scheme.rotation_at(v)
            for k, d in enumerate(rot):
                port[d] = f"p{k}"
            ports = "|".join(f"<p{k}> {k}" for k in range(len(rot)))
            label = str(v).replace("{", "\\{").replace("}", "\\}").replace("|", "\\|")
            lines.append(f"  {_dot_id(v)} [label={json.dumps('{' + label + '|{' + ports + '}}')}];")
    else:
        for v in g.vertices:
            lines.append(f"  {_dot_id(v)};")
    for i, e in enumerate(g.edges):
        u, w = g.edge_ends(i)
        a = _dot_id(u) + (f":{port[2 * i]}" if scheme else "")
        b = _dot_id(w) + (f":{port[2 * i + 1]}" if scheme else "")
        attrs = [f"label={_dot_id(e)}"]
        if scheme and scheme.signature[i] < 0:
            attrs += ["style=dashed", "color=red"]
        lines.append(f"  {a} -- {b} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"
