"""SVG figures of diagrams and DOT export of orbit graphs.

Every arc becomes one ``<line>`` (polygon) or ``<path>`` (infinity-gon)
element whose class is ``d``, ``core`` or ``plain``, so tests can assert on
structure instead of pixels.  Output is byte-for-byte deterministic.
"""

from __future__ import annotations

import math

from .arcs import LEFT, Arc, Diagram, as_diagram
from .enumeration import OrbitGraph
from .errors import ArcError
from .torsion import core

HIGHLIGHTS = ("d_set", "core", "plain")
SIZE = 512
RADIUS = 200
STEP = 64

_STYLE = (
    "<style>"
    ".outline{fill:none;stroke:#999;stroke-width:1}"
    ".vertex{fill:#000}"
    ".label{font:12px sans-serif;text-anchor:middle;dominant-baseline:middle}"
    ".plain{fill:none;stroke:#444;stroke-width:1.5}"
    ".core{fill:none;stroke:#1f6fd1;stroke-width:2.5}"
    ".d{fill:none;stroke:#d1341f;stroke-width:3.5}"
    ".ellipsis{font:16px sans-serif;text-anchor:middle}"
    "</style>"
)


def _num(x: float) -> str:
    text = f"{x:.2f}".rstrip("0").rstrip(".")
    return "0" if text == "-0" else text


def _styler(u: Diagram, d: Diagram | None, highlight: str):
    if highlight not in HIGHLIGHTS:
        raise ValueError(f"highlight must be one of {', '.join(HIGHLIGHTS)}, got {highlight!r}")
    c = core(u) if highlight in ("d_set", "core") else None

    def style(arc: Arc) -> str:
        if highlight == "d_set" and d is not None and arc in d:
            return "d"
        if c is not None and arc in c:
            return "core"
        return "plain"

    return style


def render_svg(u: Diagram, d=None, highlight: str | None = None, window: tuple[int, int] | None = None) -> str:
    """Draw ``u`` with arcs of ``d`` and of the core picked out by class.

    ``highlight`` defaults to ``d_set`` when ``d`` is given and ``core``
    otherwise.  ``window`` narrows the drawn part of an infinite diagram.
    """
    if d is not None:
        d = as_diagram(u.model, d)
    style = _styler(u, d, highlight or ("d_set" if d is not None else "core"))
    if u.model.is_finite:
        return _render_polygon(u, style)
    return _render_line(u, style, window)


def _render_polygon(u: Diagram, style) -> str:
    m = u.model.gon
    centre = SIZE / 2

    def point(v: int, r: float = RADIUS) -> tuple[float, float]:
        # Vertex 1 at the top, labels increasing counterclockwise.
        angle = math.pi / 2 + 2 * math.pi * (v - 1) / m
        return centre + r * math.cos(angle), centre - r * math.sin(angle)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">',
        _STYLE,
    ]
    corners = " ".join(f"{_num(x)},{_num(y)}" for x, y in map(point, range(1, m + 1)))
    out.append(f'<polygon class="outline" points="{corners}"/>')
    for arc in u.sorted_arcs():
        (x1, y1), (x2, y2) = point(arc.a), point(arc.b)
        out.append(
            f'<line class="{style(arc)}" data-arc="{arc.a}-{arc.b}" '
            f'x1="{_num(x1)}" y1="{_num(y1)}" x2="{_num(x2)}" y2="{_num(y2)}"/>'
        )
    for v in range(1, m + 1):
        x, y = point(v)
        lx, ly = point(v, RADIUS + 18)
        out.append(f'<circle class="vertex" cx="{_num(x)}" cy="{_num(y)}" r="3"/>')
        out.append(f'<text class="label" x="{_num(lx)}" y="{_num(ly)}">{v}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def _render_line(u: Diagram, style, window) -> str:
    mlo, mhi = u.model.window
    lo, hi = window or (mlo, mhi)
    if not (mlo <= lo < hi <= mhi):
        raise ArcError(f"render window [{lo},{hi}] is not inside the model window [{mlo},{mhi}]")
    n = hi - lo + 1
    width = STEP * n
    arcs = u.materialize((lo, hi))
    tallest = max((b - a for a, b in arcs), default=1)
    base = STEP / 2 + tallest * STEP / 2
    height = base + STEP

    def x_of(v: int) -> float:
        return STEP / 2 + (v - lo) * STEP

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_num(width)}" height="{_num(height)}" '
        f'viewBox="0 0 {_num(width)} {_num(height)}">',
        _STYLE,
        f'<line class="outline" x1="0" y1="{_num(base)}" x2="{_num(width)}" y2="{_num(base)}"/>',
    ]
    for arc in arcs:
        x1, x2 = x_of(arc.a), x_of(arc.b)
        r = (x2 - x1) / 2
        out.append(
            f'<path class="{style(arc)}" data-arc="{arc.a}-{arc.b}" '
            f'd="M {_num(x1)} {_num(base)} A {_num(r)} {_num(r)} 0 0 1 {_num(x2)} {_num(base)}"/>'
        )
    for f in sorted(u.fountains):
        if not lo <= f.vertex <= hi:
            continue
        # The tail continues past the window edge on the fountain's side.
        x = STEP / 4 if f.side == LEFT else width - STEP / 4
        out.append(
            f'<text class="ellipsis" data-fountain="{f.vertex}-{f.side}" '
            f'x="{_num(x)}" y="{_num(base - 8)}">...</text>'
        )
    for v in range(lo, hi + 1):
        out.append(f'<circle class="vertex" cx="{_num(x_of(v))}" cy="{_num(base)}" r="3"/>')
        out.append(f'<text class="label" x="{_num(x_of(v))}" y="{_num(base + 18)}">{v}</text>')
    out.append("</svg>")
    return "\n".join(out) + "\n"


def arc_list(d: Diagram) -> str:
    """Canonical arc list such as ``{{1,3},{2,4}}``."""
    return "{" + ",".join(str(a) for a in d.sorted_arcs()) + "}"


def export_dot(g: OrbitGraph) -> str:
    """DOT text with one node per diagram and one labelled edge per mutation."""
    lines = ["digraph orbit {", '  node [shape=box, fontname="monospace"];']
    for u in sorted(g.nodes, key=Diagram.key):
        lines.append(f'  "{arc_list(u)}";')
    edges = sorted(g.edges, key=lambda e: (e.source.key(), e.d.key(), e.target.key()))
    for e in edges:
        lines.append(f'  "{arc_list(e.source)}" -> "{arc_list(e.target)}" [label="{arc_list(e.d)}"];')
    lines.append("}")
    return "\n".join(lines) + "\n"


__all__ = ["HIGHLIGHTS", "arc_list", "export_dot", "render_svg"]
