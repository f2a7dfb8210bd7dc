"""Command-line interface.

Exit status: 0 on success, 1 when the input fails validation (or a check
fails), 2 on a usage error.
"""

from __future__ import annotations

import argparse
import re
import sys
from pathlib import Path

from . import document
from .arcs import Diagram, Model
from .enumeration import POLICIES, all_ptolemy, check_gon, orbit_graph, ptolemy_masks, theorem_suite
from .errors import DocumentError, PtolemyError, TriangleCheckFailed
from .mutation import FORWARD, INVERSE, DCell, d_cells, mutate, verify_mutation_triangle
from .render import HIGHLIGHTS, arc_list, export_dot, render_svg
from .torsion import classify, core, is_ptolemy, perp_left, perp_right

_PAIR = re.compile(r"^\s*(-?\d+)\s*-\s*(-?\d+)\s*$")


class UsageError(Exception):
    pass


def parse_arcs(text: str) -> list[tuple[int, int]]:
    """Parse ``"3-7,2-8"``; whitespace also separates, negative vertices are fine."""
    pairs = []
    for token in re.split(r"[,\s]+", text.strip()):
        if not token:
            continue
        m = _PAIR.match(token)
        if not m:
            raise UsageError(f"malformed arc {token!r} in --d (expected a-b)")
        pairs.append((int(m.group(1)), int(m.group(2))))
    return pairs


def read_d(value: str | None, model: Model) -> Diagram | None:
    """Resolve a --d value: inline arcs, or @FILE holding arcs or a document."""
    if value is None:
        return None
    if value.startswith("@"):
        path = Path(value[1:])
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as exc:
            raise DocumentError(f"{path}: {exc.strerror or exc}") from None
        if text.lstrip().startswith("{"):
            d = document.parse(text)
            if d.model != model:
                raise DocumentError(f"{path}: D lives on {d.model}, the diagram on {model}")
            return d
        value = text
    try:
        return Diagram(model, parse_arcs(value))
    except UsageError:
        raise
    except PtolemyError as exc:
        raise DocumentError(f"--d: {exc}") from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _window_arcs(u: Diagram, arcs):
    if u.model.is_finite:
        return list(arcs)
    lo, hi = u.model.window
    return [x for x in arcs if lo <= x.a and x.b <= hi]


def _cell_text(cell: DCell, u: Diagram) -> str:
    if u.model.is_finite or not cell.is_infinite:
        return str(cell)
    lo, hi = u.model.window
    shown = DCell(tuple(v for v in cell.vertices if lo <= v <= hi), cell.open_left, cell.open_right)
    return str(shown)


# -- subcommands ------------------------------------------------------------


def cmd_check(args) -> int:
    u = document.load(args.file)
    report = is_ptolemy(u)
    if report:
        print("ptolemy: yes")
        return 0
    print("ptolemy: no")
    for v in report.violations:
        print(f"  {v}")
    return 1


def cmd_perp(args) -> int:
    u = document.load(args.file)
    _emit(document.serialize(perp_left(u) if args.left else perp_right(u)), args.out)
    return 0


def cmd_core(args) -> int:
    u = document.load(args.file)
    _emit(document.serialize(core(u)), args.out)
    return 0


def cmd_classify(args) -> int:
    u = document.load(args.file)
    c = classify(u)
    print(f"kind: {c.kind}")
    print(f"flags: {', '.join(sorted(c.flags)) or '-'}")
    return 0


def cmd_cells(args) -> int:
    u = document.load(args.file)
    part = d_cells(u, read_d(args.d, u.model))
    print(f"D = {part.d}")
    for i, cell in enumerate(part.cells):
        inside = _window_arcs(u, sorted(x for x, j in part.interior.items() if j == i))
        print(f"cell {_cell_text(cell, u)}: {' '.join(map(str, inside)) or '-'}")
    for family in part.families:
        print(f"cells {family}")
    return 0


def cmd_mutate(args) -> int:
    u = document.load(args.file)
    v = mutate(u, read_d(args.d, u.model), INVERSE if args.inverse else FORWARD)
    _emit(document.serialize(v), args.out)
    return 0


def cmd_triangles(args) -> int:
    u = document.load(args.file)
    part = d_cells(u, read_d(args.d, u.model))
    status = 0
    for x in _window_arcs(u, sorted(part.interior)):
        try:
            print(verify_mutation_triangle(u, part.d, x, part))
        except TriangleCheckFailed as exc:
            print(exc.report)
            status = 1
    return status


def cmd_enumerate(args) -> int:
    check_gon(args.gon, large=args.large)
    if args.count_only:
        print(len(ptolemy_masks(args.gon)))
        return 0
    for u in all_ptolemy(args.gon, large=args.large):
        print(arc_list(u))
    return 0


def cmd_orbit(args) -> int:
    _emit(export_dot(orbit_graph(args.gon, args.policy, large=args.large)), args.out)
    return 0


def cmd_verify(args) -> int:
    report = theorem_suite(args.gon, large=args.large)
    print(report)
    return 0 if report.ok else 1


def cmd_render(args) -> int:
    u = document.load(args.file)
    window = None
    if args.window:
        m = re.match(r"^\s*(-?\d+)\s*,\s*(-?\d+)\s*$", args.window)
        if not m:
            raise UsageError(f"malformed --window {args.window!r} (expected LO,HI)")
        window = (int(m.group(1)), int(m.group(2)))
    svg = render_svg(u, read_d(args.d, u.model), args.highlight, window)
    _emit(svg, args.out)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="ptolemy",
        description="Torsion pairs of type A cluster categories as Ptolemy diagrams.",
    )
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def add(name, func, help_, file=True, d=None, out=False, gon=False):
        p = sub.add_parser(name, help=help_, description=help_)
        if file:
            p.add_argument("file", metavar="FILE", help="diagram document (JSON)")
        if d is not None:
            p.add_argument("--d", required=d, metavar="ARCS",
                           help='mutating set: inline "3-7,2-8" (use --d=-3-1 for a leading minus) or @FILE')
        if out:
            p.add_argument("--out", metavar="PATH", help="write here instead of stdout")
        if gon:
            p.add_argument("--gon", type=int, required=True, metavar="M", help="number of polygon vertices")
            p.add_argument("--large", action="store_true", help="allow polygons above the default size limit")
        p.set_defaults(func=func)
        return p

    add("check", cmd_check, "check the Ptolemy condition and list violations")
    p = add("perp", cmd_perp, "perpendicular category U^perp as a document", out=True)
    p.add_argument("--left", action="store_true", help="compute the left perpendicular instead")
    add("core", cmd_core, "core (Ext-injective arcs) as a document", out=True)
    add("classify", cmd_classify, "classify the torsion pair")
    add("cells", cmd_cells, "list the D-cells and the arcs inside each", d=True)
    p = add("mutate", cmd_mutate, "D-mutation of the diagram", d=True, out=True)
    p.add_argument("--inverse", action="store_true", help="apply the inverse mutation")
    add("triangles", cmd_triangles, "check the mutation triangle of every interior arc", d=True)
    p = add("enumerate", cmd_enumerate, "list every Ptolemy diagram of a polygon", file=False, gon=True)
    p.add_argument("--count-only", action="store_true", help="print only the number of diagrams")
    p = add("orbit", cmd_orbit, "mutation orbit graph in DOT format", file=False, out=True, gon=True)
    p.add_argument("--policy", choices=POLICIES, default="all_subsets", help="which mutating sets to use")
    add("verify", cmd_verify, "run the exhaustive theorem suite", file=False, gon=True)
    p = add("render", cmd_render, "draw the diagram as SVG", d=False, out=True)
    p.add_argument("--highlight", choices=HIGHLIGHTS, help="arc colouring (default: d_set with --d, else core)")
    p.add_argument("--window", metavar="LO,HI", help="part of an infinite diagram to draw")
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        parser.exit(2, f"{parser.prog}: error: {exc}\n")
    except (PtolemyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


__all__ = ["build_parser", "main", "parse_arcs"]
