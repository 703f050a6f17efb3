"""JSON file formats.

Graph    {"vertices": [...], "edges": [[u, v], ...]}
Network  {"nodes": [...], "links": [{"u": .., "v": .., "mult": k, "id": ..}, ...]}
Demands  {"l1": "9/10", ...}
Schedule {"horizon": "1", "links": {"l1": [["0", "9/10"]], ...}}

Rationals are always written as strings.
"""

from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path
from typing import Any, Mapping

from .core import (
    ConflictGraph,
    IntervalSet,
    NetworkGraph,
    Schedule,
    SetSchedule,
    StructuralError,
    format_rational,
    parse_rational,
)


class FileFormatError(StructuralError):
    def __init__(self, path, field: str, msg: str):
        super().__init__(f"{path}: {field}: {msg}")
        self.path = str(path)
        self.field = field


def load_json(path) -> Any:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise FileFormatError(path, "<file>", "not found") from None
    except json.JSONDecodeError as exc:
        raise FileFormatError(path, "<json>", str(exc)) from None


def _need(doc, key: str, path, kind=list):
    if not isinstance(doc, dict) or key not in doc:
        raise FileFormatError(path, key, "missing")
    if not isinstance(doc[key], kind):
        raise FileFormatError(path, key, f"expected {kind.__name__}")
    return doc[key]


def graph_from_doc(doc, path="<graph>") -> ConflictGraph:
    verts = _need(doc, "vertices", path)
    edges = doc.get("edges", []) if isinstance(doc, dict) else []
    try:
        return ConflictGraph.from_edges(verts, edges)
    except (StructuralError, TypeError) as exc:
        raise FileFormatError(path, "edges", str(exc)) from None


def graph_to_doc(g: ConflictGraph) -> dict:
    return {"vertices": list(g.vertices), "edges": [list(e) for e in g.edges]}


def network_from_doc(doc, path="<network>") -> NetworkGraph:
    nodes = _need(doc, "nodes", path)
    links = _need(doc, "links", path)
    try:
        return NetworkGraph.build(nodes, links)
    except (StructuralError, KeyError, TypeError, ValueError) as exc:
        raise FileFormatError(path, "links", str(exc)) from None


def network_to_doc(n: NetworkGraph) -> dict:
    return {"nodes": list(n.nodes),
            "links": [{"u": l.u, "v": l.v, "mult": l.mult, "id": l.id} for l in n.links]}


def demands_from_doc(doc, path="<demands>") -> dict[str, Fraction]:
    if not isinstance(doc, dict):
        raise FileFormatError(path, "<root>", "expected an object of link -> rational")
    out = {}
    for k, v in doc.items():
        try:
            out[str(k)] = parse_rational(v)
        except StructuralError as exc:
            raise FileFormatError(path, str(k), str(exc)) from None
    return out


def demands_to_doc(tau: Mapping[str, Fraction]) -> dict:
    return {k: format_rational(v) for k, v in tau.items()}


def schedule_from_doc(doc, path="<schedule>") -> Schedule:
    if not isinstance(doc, dict) or "horizon" not in doc:
        raise FileFormatError(path, "horizon", "missing")
    links = _need(doc, "links", path, dict)
    try:
        T = parse_rational(doc["horizon"])
    except StructuralError as exc:
        raise FileFormatError(path, "horizon", str(exc)) from None
    assignment = {}
    for k, ivs in links.items():
        try:
            assignment[str(k)] = IntervalSet.of(ivs)
        except (StructuralError, TypeError, ValueError) as exc:
            raise FileFormatError(path, f"links.{k}", str(exc)) from None
    return Schedule(T, assignment)


def schedule_to_doc(s: Schedule) -> dict:
    return {"horizon": format_rational(s.horizon),
            "links": {v: [[format_rational(a), format_rational(b)] for a, b in ivs]
                      for v, ivs in s.assignment.items()}}


def set_schedule_to_doc(s: SetSchedule) -> dict:
    return {"horizon": format_rational(s.horizon),
            "sets": [{"links": list(k), "duration": format_rational(t)} for k, t in s.durations]}


def points_from_doc(doc, path="<points>") -> list[tuple[Fraction, Fraction]]:
    pts = doc.get("points") if isinstance(doc, dict) else doc
    if not isinstance(pts, list):
        raise FileFormatError(path, "points", "expected a list of [x, y]")
    out = []
    for i, p in enumerate(pts):
        try:
            x, y = p
            out.append((parse_rational(x), parse_rational(y)))
        except (StructuralError, TypeError, ValueError) as exc:
            raise FileFormatError(path, f"points[{i}]", str(exc)) from None
    return out
