"""D-cells and D-mutation of Ptolemy diagrams.

The pairwise non-crossing arcs of a mutating set ``D`` split the polygon
(or the infinity-gon) into D-cells.  Mutation replaces each arc outside
``D`` by the arc joining the predecessors of its endpoints in the sorted
vertex list of its cell; the inverse uses successors.
"""

from __future__ import annotations

from bisect import bisect_left
from dataclasses import dataclass, field

from .arcs import LEFT, RIGHT, Arc, Diagram, Fountain, _crosses, _exchange, as_diagram
from .errors import ArcError, InvalidMutatingSet, MutationError, TriangleCheckFailed
from .torsion import core, require_ptolemy

FORWARD = "forward"
INVERSE = "inverse"


@dataclass(frozen=True)
class DCell:
    """A D-cell given by its vertices in increasing order.

    A finite cell is cyclic: its last and first vertices are joined.  An
    infinite cell is listed through a finite slice and continues with every
    integer below the slice (``open_left``) and above it (``open_right``).
    """

    vertices: tuple[int, ...]
    open_left: bool = False
    open_right: bool = False

    @property
    def is_infinite(self) -> bool:
        return self.open_left or self.open_right

    def __contains__(self, v: int) -> bool:
        vs = self.vertices
        if self.open_left and v < vs[0]:
            return True
        if self.open_right and v > vs[-1]:
            return True
        i = bisect_left(vs, v)
        return i < len(vs) and vs[i] == v

    def _position(self, v: int) -> int:
        vs = self.vertices
        if v < vs[0]:
            return v - vs[0]
        if v > vs[-1]:
            return len(vs) - 1 + (v - vs[-1])
        return bisect_left(vs, v)

    def _vertex_at(self, pos: int) -> int:
        vs = self.vertices
        if self.is_infinite:
            if pos < 0:
                return vs[0] + pos
            if pos >= len(vs):
                return vs[-1] + pos - len(vs) + 1
            return vs[pos]
        return vs[pos % len(vs)]

    def step(self, v: int, k: int) -> int:
        """The vertex ``k`` positions after ``v`` along the cell (cyclically if finite)."""
        if v not in self:
            raise ArcError(f"vertex {v} is not in the cell {self}")
        return self._vertex_at(self._position(v) + k)

    def pred(self, v: int) -> int:
        return self.step(v, -1)

    def succ(self, v: int) -> int:
        return self.step(v, 1)

    def is_interior(self, arc: Arc) -> bool:
        """Both endpoints in the cell and not neighbours along its boundary."""
        if arc.a not in self or arc.b not in self:
            return False
        gap = self._position(arc.b) - self._position(arc.a)
        if self.is_infinite:
            return gap >= 2
        return 1 < gap < len(self.vertices) - 1

    def __str__(self) -> str:
        body = " ".join(str(v) for v in self.vertices)
        if self.open_left:
            body = "... " + body
        if self.open_right:
            body = body + " ..."
        return "{" + body + "}"


@dataclass(frozen=True)
class TriangleFamily:
    """Infinitely many triangular cells ``{t, t+1, apex}`` beyond the probe range.

    They come from a fountain of ``D`` and have no interior arcs.  For a left
    family ``t`` runs over ``t <= through``; for a right family the cells are
    ``{apex, t-1, t}`` with ``t >= through``.
    """

    apex: int
    side: str
    through: int

    def __str__(self) -> str:
        if self.side == LEFT:
            return f"{{t,t+1,{self.apex}}} for t <= {self.through}"
        return f"{{{self.apex},t-1,t}} for t >= {self.through}"


@dataclass(frozen=True)
class DCellPartition:
    d: Diagram
    cells: tuple[DCell, ...]
    interior: dict[Arc, int] = field(default_factory=dict)
    families: tuple[TriangleFamily, ...] = ()

    def cell_of(self, arc: Arc) -> DCell:
        try:
            return self.cells[self.interior[arc]]
        except KeyError:
            raise ArcError(f"{arc} is not interior to any D-cell") from None


def validate_d(u: Diagram, d) -> Diagram:
    """Check that ``d`` may mutate the Ptolemy diagram ``u``; return it as a diagram.

    ``d`` must sit inside the core of ``u``.  In the infinite model it must
    also be locally finite or have a fountain, which for a non-crossing set
    means: no fountain descriptors at all, or exactly a left and a right one
    at the same vertex.
    """
    d = as_diagram(u.model, d)
    require_ptolemy(u)
    c = core(u)
    if not d <= c:
        extra = [a for a in d.materialize() if a not in c]
        what = str(extra[0]) if extra else "a fountain tail"
        raise InvalidMutatingSet(f"{what} of D is not in the core {c}")
    if d.fountains:
        vertices = {f.vertex for f in d.fountains}
        sides = {f.side for f in d.fountains}
        if len(vertices) != 1 or sides != {LEFT, RIGHT}:
            raise InvalidMutatingSet("D is neither locally finite nor has a fountain")
    return d


def _walk(a: int, b: int, bounded_by) -> list[int]:
    """Greedy boundary walk from ``a`` to ``b`` under the chord ``{a,b}``.

    From each vertex jump to the farthest vertex not beyond ``b`` joined to
    it by an edge or an arc of ``D``, never using the chord itself.
    """
    path = [a]
    cur = a
    while cur != b:
        nxt = cur + 1
        for j in range(b, cur + 1, -1):
            if (cur, j) != (a, b) and bounded_by(Arc(cur, j)):
                nxt = j
                break
        path.append(nxt)
        cur = nxt
    return path


def d_cells(u: Diagram, d) -> DCellPartition:
    """Decompose along the arcs of ``d`` and assign each arc of ``u`` not in ``d`` to its cell."""
    d = validate_d(u, d)
    model = u.model

    if model.is_finite:
        def joined(arc):
            return model.is_edge(arc) or arc in d.arcs

        cells = [DCell(tuple(_walk(1, model.gon, joined)))]
        cells += [DCell(tuple(_walk(x.a, x.b, joined))) for x in d.sorted_arcs()]
        arcs = u.sorted_arcs()
        families = ()
    else:
        plo, phi = u.probe_range(d)

        def joined(arc):
            return model.is_edge(arc) or arc in d

        chords = d.probe_arcs((plo, phi))
        cells = [DCell(tuple(_walk(x.a, x.b, joined))) for x in chords]
        families = ()
        if d.fountains:
            apex = next(iter(d.fountains)).vertex
            families = (
                TriangleFamily(apex, LEFT, plo - 1),
                TriangleFamily(apex, RIGHT, phi + 1),
            )
        else:
            covered = set()
            for x in d.arcs:
                covered.update(range(x.a + 1, x.b))
            outer = tuple(v for v in range(plo, phi + 1) if v not in covered)
            cells.append(DCell(outer, open_left=True, open_right=True))
        arcs = u.probe_arcs((plo, phi))

    by_vertex: dict[int, list[int]] = {}
    for i, cell in enumerate(cells):
        for v in cell.vertices:
            by_vertex.setdefault(v, []).append(i)
    interior = {}
    for x in arcs:
        if x in d:
            continue
        owners = [i for i in by_vertex.get(x.a, ()) if cells[i].is_interior(x)]
        if len(owners) != 1:
            raise MutationError(f"{x} lies in {len(owners)} D-cells, expected exactly one")
        interior[x] = owners[0]
    return DCellPartition(d, tuple(cells), interior, families)


def mutate_arc(cell: DCell, x: Arc, direction: str = FORWARD) -> Arc:
    """Move both endpoints of an interior arc one position down (or up) the cell."""
    x = Arc.of(*x)
    if not cell.is_interior(x):
        raise ArcError(f"{x} is not interior to the cell {cell}")
    k = -1 if direction == FORWARD else 1
    return Arc.of(cell.step(x.a, k), cell.step(x.b, k))


def mutate(u: Diagram, d, direction: str = FORWARD) -> Diagram:
    """The D-mutation of ``u`` (``direction="inverse"`` undoes it)."""
    if direction not in (FORWARD, INVERSE):
        raise ValueError(f"direction must be {FORWARD!r} or {INVERSE!r}, got {direction!r}")
    part = d_cells(u, d)
    d = part.d
    k = -1 if direction == FORWARD else 1

    images = {}
    for x, i in part.interior.items():
        images[x] = mutate_arc(part.cells[i], x, direction)
    fixed = [x for x in (u.sorted_arcs() if u.model.is_finite else u.probe_arcs(u.probe_range(d))) if x in d]

    if len(set(images.values())) != len(images) or set(images.values()) & set(fixed):
        raise MutationError("mutated arcs collide")

    tails = []
    if not u.model.is_finite:
        plo, phi = u.probe_range(d)
        outer = next((c for c in part.cells if c.is_infinite), None)
        for f in u.fountains:
            far = Arc(plo, f.vertex) if f.side == LEFT else Arc(f.vertex, phi)
            if far in d:
                tails.append(Fountain(f.vertex, f.side, far.a if f.side == LEFT else far.b))
                continue
            # Far tail arcs sit in the infinite cell, where far vertices step by one.
            v = outer.step(f.vertex, k)
            if f.side == LEFT:
                tails.append(Fountain(v, LEFT, plo - 1 + k))
            else:
                tails.append(Fountain(v, RIGHT, phi + 1 + k))
    return Diagram(u.model, fixed + list(images.values()), tails)


@dataclass(frozen=True)
class TriangleReport:
    arc: Arc
    cell: DCell
    middle: tuple[Arc, Arc]
    image: Arc
    checks: dict[str, bool]

    @property
    def ok(self) -> bool:
        return all(self.checks.values())

    def __str__(self) -> str:
        status = "ok" if self.ok else "FAILED " + ",".join(k for k, v in self.checks.items() if not v)
        mid = " + ".join(str(m) for m in self.middle)
        return f"{self.arc} -> {mid} -> {self.image}  [{status}]"


def verify_mutation_triangle(u: Diagram, d, x, partition: DCellPartition | None = None) -> TriangleReport:
    """Check the approximation triangle ``x -> cell edges -> mutated x``.

    The middle term is the pair of cell boundary pieces leading into the two
    endpoints of ``x``.  Checks: both pieces are edges or arcs of ``D``; the
    image crosses nothing in ``D``; the image equals :func:`mutate_arc`; and
    the triangle agrees with the exchange triangle of the crossing pair
    ``(x, image)``.
    """
    part = partition or d_cells(u, d)
    d = part.d
    model = u.model
    x = Arc.of(*x)
    if x not in u:
        raise ArcError(f"{x} is not an arc of the diagram")
    if x in d:
        raise ArcError(f"{x} belongs to D and is not mutated")
    cell = part.cell_of(x)
    p, q = cell.pred(x.a), cell.pred(x.b)
    middle = (Arc.of(p, x.a), Arc.of(q, x.b))
    image = Arc.of(p, q)

    checks = {
        "middle_in_d": all(model.is_edge(m) or m in d for m in middle),
        "image_rigid_against_d": not d.crosses_any(image),
        "image_is_mutation": image == mutate_arc(cell, x),
    }
    template = False
    if _crosses(x, image):
        from_x = _exchange(model, x, image)[0]
        nonzero = tuple(sorted(m for m in middle if not model.is_edge(m)))
        template = from_x.last == image and from_x.middle == nonzero
    checks["exchange_template"] = template

    report = TriangleReport(x, cell, middle, image, checks)
    if not report.ok:
        raise TriangleCheckFailed(f"triangle check failed: {report}", report)
    return report


def verify_all_triangles(u: Diagram, d) -> list[TriangleReport]:
    """Triangle reports for every arc of ``u`` interior to a D-cell, in sorted order."""
    part = d_cells(u, d)
    return [verify_mutation_triangle(u, part.d, x, part) for x in sorted(part.interior)]


__all__ = [
    "DCell",
    "DCellPartition",
    "FORWARD",
    "INVERSE",
    "TriangleFamily",
    "TriangleReport",
    "d_cells",
    "mutate",
    "mutate_arc",
    "validate_d",
    "verify_all_triangles",
    "verify_mutation_triangle",
]
