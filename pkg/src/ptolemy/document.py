"""JSON documents for diagrams.

Finite::

    {"model": "finite", "gon": 8, "arcs": [[2, 7], [2, 8]]}

Infinite::

    {"model": "infinite", "window": [-12, 12], "arcs": [[1, 3]],
     "fountains": [{"vertex": 1, "side": "left", "bound": -1}]}

:func:`serialize` writes the canonical form: fixed key order, sorted arcs,
sorted fountains with maximal bounds, one fountain entry per side.
"""

from __future__ import annotations

import json
from pathlib import Path

from .arcs import BOTH, LEFT, RIGHT, Arc, Diagram, Fountain, Model
from .errors import DocumentError, PtolemyError

FINITE = "finite"
INFINITE = "infinite"
_FINITE_KEYS = {"model", "gon", "arcs"}
_INFINITE_KEYS = {"model", "window", "arcs", "fountains"}


def _int(value, where: str) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise DocumentError(f"{where}: expected an integer, got {json.dumps(value)}")
    return value


def _pair(value, where: str) -> tuple[int, int]:
    if not isinstance(value, list) or len(value) != 2:
        raise DocumentError(f"{where}: expected a two-element array, got {json.dumps(value)}")
    return _int(value[0], f"{where}[0]"), _int(value[1], f"{where}[1]")


def _fountain(value, where: str) -> tuple[int, str, int]:
    if not isinstance(value, dict):
        raise DocumentError(f"{where}: expected an object, got {json.dumps(value)}")
    keys = set(value)
    if keys != {"vertex", "side", "bound"}:
        missing = sorted({"vertex", "side", "bound"} - keys)
        extra = sorted(keys - {"vertex", "side", "bound"})
        detail = f"missing {missing}" if missing else f"unknown {extra}"
        raise DocumentError(f"{where}: malformed fountain ({detail})")
    side = value["side"]
    if side not in (LEFT, RIGHT, BOTH):
        raise DocumentError(f"{where}.side: expected left, right or both, got {json.dumps(side)}")
    vertex = _int(value["vertex"], f"{where}.vertex")
    bound = _int(value["bound"], f"{where}.bound")
    if side in (LEFT, BOTH) and bound > vertex - 2:
        raise DocumentError(f"{where}.bound: a {side} fountain at {vertex} needs bound <= {vertex - 2}, got {bound}")
    if side == RIGHT and bound < vertex + 2:
        raise DocumentError(f"{where}.bound: a right fountain at {vertex} needs bound >= {vertex + 2}, got {bound}")
    return vertex, side, bound


def from_dict(data) -> Diagram:
    """Validate a decoded document and build its diagram."""
    if not isinstance(data, dict):
        raise DocumentError("document: expected a JSON object")
    kind = data.get("model")
    if kind == FINITE:
        allowed = _FINITE_KEYS
    elif kind == INFINITE:
        allowed = _INFINITE_KEYS
    else:
        raise DocumentError(f"model: expected \"finite\" or \"infinite\", got {json.dumps(kind)}")
    unknown = sorted(set(data) - allowed)
    if unknown:
        raise DocumentError(f"document: unknown field {unknown[0]!r} for a {kind} model")

    try:
        if kind == FINITE:
            if "gon" not in data:
                raise DocumentError("gon: missing")
            model = Model.finite(_int(data["gon"], "gon"))
        else:
            if "window" not in data:
                raise DocumentError("window: missing")
            model = Model.infinite(*_pair(data["window"], "window"))
    except DocumentError:
        raise
    except PtolemyError as exc:
        raise DocumentError(f"{'gon' if kind == FINITE else 'window'}: {exc}") from None

    raw_fountains = data.get("fountains", [])
    if not isinstance(raw_fountains, list):
        raise DocumentError("fountains: expected an array")
    fountains = [_fountain(f, f"fountains[{i}]") for i, f in enumerate(raw_fountains)]
    expanded = []
    for vertex, side, bound in fountains:
        if side == BOTH:
            expanded += [Fountain(vertex, LEFT, bound), Fountain(vertex, RIGHT, 2 * vertex - bound)]
        else:
            expanded.append(Fountain(vertex, side, bound))
    for f in expanded:
        if not model.has_vertex(f.vertex):
            raise DocumentError(f"fountains: vertex {f.vertex} is outside the window {list(model.window)}")

    raw_arcs = data.get("arcs", [])
    if not isinstance(raw_arcs, list):
        raise DocumentError("arcs: expected an array")
    seen: dict[Arc, str] = {}
    for i, item in enumerate(raw_arcs):
        where = f"arcs[{i}]"
        x, y = _pair(item, where)
        try:
            arc = model.arc(x, y) if model.is_finite else Arc.of(x, y)
        except PtolemyError as exc:
            raise DocumentError(f"{where}: {exc}") from None
        if model.is_edge(arc):
            raise DocumentError(f"{where}: {arc} is an edge, not an arc")
        if not model.is_finite:
            lo, hi = model.window
            if arc.a < lo or arc.b > hi:
                raise DocumentError(f"{where}: {arc} leaves the window [{lo},{hi}]")
        if arc in seen:
            raise DocumentError(f"{where}: duplicate arc {arc} (first at {seen[arc]})")
        for f in expanded:
            if f.generates(arc):
                raise DocumentError(f"{where}: {arc} duplicates an arc of the {f.side} fountain at {f.vertex}")
        seen[arc] = where
    return Diagram(model, list(seen), expanded)


def parse(text: str) -> Diagram:
    """Parse a JSON document; errors name the line or field at fault."""
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
    return from_dict(data)


def load(path) -> Diagram:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise DocumentError(f"{path}: {exc.strerror or exc}") from None
    try:
        return parse(text)
    except DocumentError as exc:
        raise DocumentError(f"{path}: {exc}") from None


def to_dict(d: Diagram) -> dict:
    if d.model.is_finite:
        return {"model": FINITE, "gon": d.model.gon, "arcs": [list(a) for a in d.sorted_arcs()]}
    return {
        "model": INFINITE,
        "window": list(d.model.window),
        "arcs": [list(a) for a in d.sorted_arcs()],
        "fountains": [
            {"vertex": f.vertex, "side": f.side, "bound": f.bound} for f in sorted(d.fountains)
        ],
    }


def serialize(d: Diagram) -> str:
    """Canonical document text, newline-terminated."""
    data = to_dict(d)
    lines = ["{"]
    items = list(data.items())
    for i, (key, value) in enumerate(items):
        comma = "," if i < len(items) - 1 else ""
        if key == "fountains" and value:
            inner = ",\n".join("    " + json.dumps(f) for f in value)
            lines.append(f'  "{key}": [\n{inner}\n  ]{comma}')
        else:
            lines.append(f'  "{key}": {json.dumps(value)}{comma}')
    lines.append("}")
    return "\n".join(lines) + "\n"


__all__ = ["from_dict", "load", "parse", "serialize", "to_dict"]
