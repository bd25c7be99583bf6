"""Versioned JSON documents for base diagrams.

``serialize_diagram`` always writes the canonical form: circles sorted,
corners and Lefschetz points relabelled, keys sorted, UTF-8, trailing
newline.  Without history the bytes depend only on the isomorphism class.
"""

from __future__ import annotations

import json
from typing import Union

from .diagram import (
    KINDS,
    NECKLACE,
    BoundaryCircle,
    DivisorComponent,
    FibrationDiagram,
    LefschetzPoint,
    canonical_form,
)
from .homology2 import Cycle

FORMAT_VERSION = 1


class ParseError(ValueError):
    def __init__(self, message: str, location: str = "$"):
        self.location = location
        super().__init__(f"{location}: {message}")


class VersionError(ParseError):
    pass


def diagram_to_json(d: FibrationDiagram, include_history: bool = True) -> dict:
    d = canonical_form(d)
    circles = []
    for c in d.circles:
        comp = {"kind": c.component.kind, "parity": c.component.parity}
        if c.component.kind == NECKLACE:
            comp["k"] = c.component.k
        circles.append({"corners": list(c.corners), "coorientable": c.coorientable,
                        "component": comp})
    lefschetz = []
    for p in d.lefschetz:
        item = {"id": p.id}
        if p.cycle is not None:
            item["cycle"] = Cycle(*p.cycle).to_json()
        if p.basis_tag is not None:
            item["basis_tag"] = p.basis_tag
        lefschetz.append(item)
    doc = {
        "version": FORMAT_VERSION,
        "genus": d.genus,
        "circles": circles,
        "lefschetz": lefschetz,
        "flags": {"homologically_essential": d.homologically_essential,
                  "fibres_connected": d.fibres_connected},
    }
    if include_history:
        doc["history"] = list(d.history)
    return doc


def dumps_canonical(doc) -> bytes:
    return (json.dumps(doc, sort_keys=True, indent=2, ensure_ascii=False) + "\n").encode("utf-8")


def serialize_diagram(d: FibrationDiagram, include_history: bool = True) -> bytes:
    return dumps_canonical(diagram_to_json(d, include_history))


def canonical_bytes(d: FibrationDiagram) -> bytes:
    """History-free canonical bytes; equal iff the diagrams are isomorphic."""
    return serialize_diagram(d, include_history=False)


def _get(obj, key, types, where, default=...):
    if not isinstance(obj, dict):
        raise ParseError("expected an object", where)
    if key not in obj:
        if default is ...:
            raise ParseError(f"missing key {key!r}", where)
        return default
    val = obj[key]
    # bool is an int subclass; keep the two apart
    if types is int and isinstance(val, bool) or not isinstance(val, types):
        raise ParseError(f"key {key!r} has wrong type {type(val).__name__}", f"{where}.{key}")
    return val


def _cycle(val, where) -> Cycle:
    if (not isinstance(val, list) or len(val) != 2
            or not all(isinstance(x, int) and not isinstance(x, bool) for x in val)):
        raise ParseError("cycle must be a two-element integer array", where)
    return Cycle(*val)


def parse_document(doc) -> FibrationDiagram:
    version = _get(doc, "version", int, "$")
    if version != FORMAT_VERSION:
        raise VersionError(f"unsupported version {version}", "$.version")
    genus = _get(doc, "genus", int, "$")
    circles = []
    for i, c in enumerate(_get(doc, "circles", list, "$")):
        where = f"$.circles[{i}]"
        corners = _get(c, "corners", list, where)
        if not all(isinstance(x, (str, int)) and not isinstance(x, bool) for x in corners):
            raise ParseError("corner ids must be strings", f"{where}.corners")
        comp = _get(c, "component", dict, where)
        kind = _get(comp, "kind", str, f"{where}.component")
        if kind not in KINDS:
            raise ParseError(f"unknown kind {kind!r}", f"{where}.component.kind")
        parity = _get(comp, "parity", int, f"{where}.component")
        k = _get(comp, "k", int, f"{where}.component", None)
        coorientable = _get(c, "coorientable", bool, where, kind != "klein_bottle")
        circles.append(BoundaryCircle(tuple(str(x) for x in corners),
                                      DivisorComponent(kind, parity, k), coorientable))
    points = []
    for i, p in enumerate(_get(doc, "lefschetz", list, "$", [])):
        where = f"$.lefschetz[{i}]"
        pid = _get(p, "id", str, where)
        cyc = p.get("cycle") if isinstance(p, dict) else None
        cycle = None if cyc is None else _cycle(cyc, f"{where}.cycle")
        tag = _get(p, "basis_tag", str, where, None)
        points.append(LefschetzPoint(pid, cycle, tag))
    flags = _get(doc, "flags", dict, "$", {})
    history = _get(doc, "history", list, "$", [])
    return FibrationDiagram(
        genus=genus,
        circles=tuple(circles),
        lefschetz=tuple(points),
        homologically_essential=_get(flags, "homologically_essential", bool, "$.flags", True),
        fibres_connected=_get(flags, "fibres_connected", bool, "$.flags", True),
        history=tuple(history),
    )


def parse_diagram(data: Union[bytes, str]) -> FibrationDiagram:
    if isinstance(data, bytes):
        try:
            data = data.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"not UTF-8 ({exc.reason})", f"byte {exc.start}") from None
    try:
        doc = json.loads(data)
    except json.JSONDecodeError as exc:
        raise ParseError(exc.msg, f"line {exc.lineno} column {exc.colno}") from None
    return parse_document(doc)
