"""Vertices, arcs, fountains and diagrams of the polygon and the infinity-gon.

Two models are supported:

* the finite model, a convex ``m``-gon with vertices ``1..m`` labelled
  counterclockwise, whose diagonals stand for the indecomposable objects of
  the cluster category of type ``A_{m-3}``;
* the infinite model, the infinity-gon with integer vertices, whose arcs
  stand for the indecomposables of the cluster category of type ``A_inf``.
  Infinite models carry a finite *window* that bounds explicit arcs and
  every printed or rendered view.

Edges are valid :class:`Arc` values but behave as zero objects: they never
cross anything and carry no Hom or Ext.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Iterator, NamedTuple

from .errors import ArcError, DiagramError, WindowOverflow

#: Extra vertices added on each side of a diagram's span to obtain its probe
#: range.  Every configuration of at most two arcs whose endpoints leave the
#: span is order-isomorphic (with adjacency preserved) to one inside the probe
#: range, so exact answers about infinite tails reduce to finite checks there.
PROBE_MARGIN = 6

LEFT = "left"
RIGHT = "right"
BOTH = "both"


class Arc(NamedTuple):
    """An unordered pair of vertices, stored with ``a < b``."""

    a: int
    b: int

    def __str__(self) -> str:
        return f"{{{self.a},{self.b}}}"

    @classmethod
    def of(cls, x: int, y: int) -> Arc:
        """Build a normalized arc from two distinct integers."""
        if x == y:
            raise ArcError(f"arc endpoints must differ, got {{{x},{y}}}")
        return cls(x, y) if x < y else cls(y, x)


def _crosses(x: Arc, y: Arc) -> bool:
    # Normalized arcs on 1..m interleave on the circle iff they interleave on
    # the line, so one rule serves both models.  Shared endpoints never cross.
    a, b = x
    c, d = y
    return a < c < b < d or c < a < d < b


def _shift_raw(x: Arc, k: int) -> Arc:
    return Arc(x.a - k, x.b - k)


class Fountain(NamedTuple):
    """A one-sided infinite family of arcs ending at ``vertex``.

    A left fountain generates ``{t, vertex}`` for every ``t <= bound``; a right
    fountain generates ``{vertex, t}`` for every ``t >= bound``.
    """

    vertex: int
    side: str
    bound: int

    def generates(self, arc: Arc) -> bool:
        if self.side == LEFT:
            return arc.b == self.vertex and arc.a <= self.bound
        return arc.a == self.vertex and arc.b >= self.bound

    def arcs_within(self, lo: int, hi: int) -> Iterator[Arc]:
        """Yield the generated arcs whose free endpoint lies in ``[lo, hi]``."""
        if self.side == LEFT:
            for t in range(lo, min(hi, self.bound) + 1):
                yield Arc(t, self.vertex)
        else:
            for t in range(max(lo, self.bound), hi + 1):
                yield Arc(self.vertex, t)

    def crosses(self, arc: Arc) -> bool:
        """Whether some arc generated by this fountain crosses ``arc``."""
        p, q = arc
        v = self.vertex
        if p < v < q:
            # The free endpoint can always be pushed past p (or q).
            return True
        if self.side == LEFT:
            # {t, v} with p < t < q < v and t <= bound.
            return q < v and p + 1 <= min(q - 1, self.bound)
        # {v, t} with v < p < t < q and t >= bound.
        return v < p and max(p + 1, self.bound) <= q - 1

    def shifted(self, k: int) -> Fountain:
        return Fountain(self.vertex - k, self.side, self.bound - k)

    def __str__(self) -> str:
        if self.side == LEFT:
            return f"{{t,{self.vertex}}} for t <= {self.bound}"
        return f"{{{self.vertex},t}} for t >= {self.bound}"


@dataclass(frozen=True)
class Model:
    """Either a finite ``gon`` or the infinity-gon seen through ``window``."""

    gon: int | None = None
    window: tuple[int, int] | None = None

    def __post_init__(self):
        if (self.gon is None) == (self.window is None):
            raise ArcError("a model is either finite (gon) or infinite (window)")
        if self.gon is not None and self.gon < 4:
            raise ArcError(f"a polygon needs at least 4 vertices, got {self.gon}")
        if self.window is not None:
            lo, hi = self.window
            object.__setattr__(self, "window", (int(lo), int(hi)))
            if hi - lo + 1 < 6:
                raise ArcError(f"window [{lo},{hi}] is shorter than 6 vertices")

    @classmethod
    def finite(cls, gon: int) -> Model:
        return cls(gon=gon)

    @classmethod
    def infinite(cls, lo: int, hi: int) -> Model:
        return cls(window=(lo, hi))

    @property
    def is_finite(self) -> bool:
        return self.gon is not None

    def widened(self, margin: int) -> Model:
        """The same infinite model with a window larger by ``margin`` on each side."""
        if self.is_finite:
            return self
        lo, hi = self.window
        return Model(window=(lo - margin, hi + margin))

    def has_vertex(self, v: int) -> bool:
        if self.is_finite:
            return 1 <= v <= self.gon
        lo, hi = self.window
        return lo <= v <= hi

    def arc(self, x: int, y: int) -> Arc:
        """A normalized arc of this model; raises :class:`ArcError` if out of range."""
        arc = Arc.of(x, y)
        self.check(arc)
        return arc

    def check(self, arc: Arc) -> None:
        for v in arc:
            if not self.has_vertex(v):
                where = f"1..{self.gon}" if self.is_finite else f"window {list(self.window)}"
                raise ArcError(f"vertex {v} of {arc} lies outside {where}")

    def is_edge(self, arc: Arc) -> bool:
        a, b = arc
        if b - a == 1:
            return True
        return self.is_finite and a == 1 and b == self.gon

    def reduce(self, v: int) -> int:
        """Reduce a vertex into ``1..m`` (finite) or return it unchanged."""
        if self.is_finite:
            return (v - 1) % self.gon + 1
        return v

    def diagonals(self) -> tuple[Arc, ...]:
        """All diagonals of the polygon in lexicographic order."""
        if not self.is_finite:
            raise ArcError("the infinity-gon has infinitely many arcs")
        return _diagonals(self.gon)

    def arcs_within(self, lo: int, hi: int) -> Iterator[Arc]:
        """All arcs (non-edges) with both endpoints in ``[lo, hi]``."""
        for a in range(lo, hi + 1):
            for b in range(a + 2, hi + 1):
                arc = Arc(a, b)
                if not self.is_edge(arc):
                    yield arc

    def __str__(self) -> str:
        if self.is_finite:
            return f"P_{self.gon}"
        return f"P_inf[{self.window[0]},{self.window[1]}]"


_DIAGONAL_CACHE: dict[int, tuple[Arc, ...]] = {}


def _diagonals(gon: int) -> tuple[Arc, ...]:
    if gon not in _DIAGONAL_CACHE:
        _DIAGONAL_CACHE[gon] = tuple(
            Arc(a, b)
            for a in range(1, gon + 1)
            for b in range(a + 2, gon + 1)
            if not (a == 1 and b == gon)
        )
    return _DIAGONAL_CACHE[gon]


class ExchangeTriangle(NamedTuple):
    """A non-split triangle ``first -> middle -> last -> first[1]``.

    Middle summands that are edges are zero objects and are dropped.
    """

    first: Arc
    middle: tuple[Arc, ...]
    last: Arc

    def __str__(self) -> str:
        mid = " + ".join(str(m) for m in self.middle) or "0"
        return f"{self.first} -> {mid} -> {self.last}"


# -- diagrams ---------------------------------------------------------------


def _coerce_arc(model: Model, pair) -> Arc:
    x, y = pair
    if model.is_finite:
        return model.arc(int(x), int(y))
    return Arc.of(int(x), int(y))


def _coerce_fountains(fountains) -> list[Fountain]:
    out = []
    for f in fountains:
        vertex, side, bound = f
        if side == BOTH:
            # A two-sided fountain with mirrored reach.
            out.append(Fountain(vertex, LEFT, bound))
            out.append(Fountain(vertex, RIGHT, 2 * vertex - bound))
        elif side in (LEFT, RIGHT):
            out.append(Fountain(int(vertex), side, int(bound)))
        else:
            raise DiagramError(f"fountain side must be left, right or both, got {side!r}")
    return out


def canonical_parts(model: Model, arcs, fountains) -> tuple[frozenset[Arc], frozenset[Fountain]]:
    """Normalize arcs and fountains without checking the window.

    Duplicate fountains on the same vertex and side are merged, explicit arcs
    already generated by a fountain are dropped, and explicit arcs adjacent to
    a fountain tail are absorbed into it so that every bound is maximal.
    """
    arc_set = {_coerce_arc(model, p) for p in arcs}
    fountain_list = _coerce_fountains(fountains)
    if model.is_finite:
        if fountain_list:
            raise DiagramError("fountains only exist in the infinite model")
        return frozenset(arc_set), frozenset()

    merged: dict[tuple[int, str], int] = {}
    for f in fountain_list:
        if f.side == LEFT and f.bound > f.vertex - 2:
            raise DiagramError(f"left fountain at {f.vertex} needs bound <= {f.vertex - 2}, got {f.bound}")
        if f.side == RIGHT and f.bound < f.vertex + 2:
            raise DiagramError(f"right fountain at {f.vertex} needs bound >= {f.vertex + 2}, got {f.bound}")
        key = (f.vertex, f.side)
        if key in merged:
            pick = max if f.side == LEFT else min
            merged[key] = pick(merged[key], f.bound)
        else:
            merged[key] = f.bound

    for (v, side), bound in merged.items():
        if side == LEFT:
            while bound + 1 <= v - 2 and Arc(bound + 1, v) in arc_set:
                bound += 1
        else:
            while bound - 1 >= v + 2 and Arc(v, bound - 1) in arc_set:
                bound -= 1
        merged[(v, side)] = bound

    final = frozenset(Fountain(v, side, bound) for (v, side), bound in merged.items())
    arc_set = {arc for arc in arc_set if not any(f.generates(arc) for f in final)}
    return frozenset(arc_set), final


@dataclass(frozen=True)
class Diagram:
    """A set of arcs standing for an additively closed subcategory.

    In the infinite model the set is ``arcs`` plus every arc generated by
    ``fountains``.  Construction canonicalizes, so two diagrams describing the
    same arc set compare equal.
    """

    model: Model
    arcs: frozenset[Arc] = field(default_factory=frozenset)
    fountains: frozenset[Fountain] = field(default_factory=frozenset)

    def __post_init__(self):
        arcs, fountains = canonical_parts(self.model, self.arcs, self.fountains)
        for arc in arcs:
            if self.model.is_edge(arc):
                raise DiagramError(f"{arc} is an edge, not an arc of {self.model}")
            if not self.model.is_finite:
                lo, hi = self.model.window
                if not (lo <= arc.a and arc.b <= hi):
                    raise WindowOverflow(f"{arc} leaves the window [{lo},{hi}]")
        for f in fountains:
            if not self.model.has_vertex(f.vertex):
                raise WindowOverflow(f"fountain vertex {f.vertex} leaves the window {list(self.model.window)}")
        object.__setattr__(self, "arcs", arcs)
        object.__setattr__(self, "fountains", fountains)

    # -- construction helpers

    @classmethod
    def clipped(cls, model: Model, arcs, fountains=()) -> Diagram:
        """Canonicalize, then silently drop what the window cannot show."""
        arcs, fountains = canonical_parts(model, arcs, fountains)
        if not model.is_finite:
            lo, hi = model.window
            arcs = [a for a in arcs if lo <= a.a and a.b <= hi]
            fountains = [f for f in fountains if lo <= f.vertex <= hi]
        return cls(model, arcs, fountains)

    def replace(self, arcs=None, fountains=None, model=None) -> Diagram:
        return Diagram(
            self.model if model is None else model,
            self.arcs if arcs is None else arcs,
            self.fountains if fountains is None else fountains,
        )

    # -- set protocol

    def __contains__(self, arc) -> bool:
        arc = Arc.of(*arc)
        return arc in self.arcs or any(f.generates(arc) for f in self.fountains)

    def __iter__(self) -> Iterator[Arc]:
        return iter(self.materialize())

    def __len__(self) -> int:
        return len(self.materialize())

    def __bool__(self) -> bool:
        return bool(self.arcs or self.fountains)

    def __le__(self, other: Diagram) -> bool:
        """Containment of arc sets, exact for fountain tails."""
        if not all(arc in other for arc in self.arcs):
            return False
        for f in self.fountains:
            covers = [g for g in other.fountains if g.vertex == f.vertex and g.side == f.side]
            if not covers:
                return False
            g = covers[0]
            if (f.side == LEFT and g.bound < f.bound) or (f.side == RIGHT and g.bound > f.bound):
                return False
        return True

    def key(self) -> tuple:
        """Canonical sort key: sorted arcs, then sorted fountains."""
        return (tuple(sorted(self.arcs)), tuple(sorted(self.fountains)))

    def sorted_arcs(self) -> list[Arc]:
        return sorted(self.arcs)

    # -- infinite-model views

    def span(self) -> tuple[int, int]:
        """Smallest interval holding the window, all explicit arcs and all fountain data."""
        if self.model.is_finite:
            return (1, self.model.gon)
        lo, hi = self.model.window
        for f in self.fountains:
            lo = min(lo, f.vertex, f.bound)
            hi = max(hi, f.vertex, f.bound)
        return lo, hi

    def probe_range(self, *others: Diagram) -> tuple[int, int]:
        lo, hi = self.span()
        for other in others:
            olo, ohi = other.span()
            lo, hi = min(lo, olo), max(hi, ohi)
        return lo - PROBE_MARGIN, hi + PROBE_MARGIN

    def materialize(self, window: tuple[int, int] | None = None) -> tuple[Arc, ...]:
        """Explicit arcs plus fountain arcs with both endpoints in ``window``, sorted."""
        if self.model.is_finite:
            return tuple(sorted(self.arcs))
        if window is None:
            window = self.model.window
        lo, hi = window
        arcs = {a for a in self.arcs if lo <= a.a and a.b <= hi}
        for f in self.fountains:
            if lo <= f.vertex <= hi:
                arcs.update(f.arcs_within(lo, hi))
        return tuple(sorted(arcs))

    def probe_arcs(self, probe: tuple[int, int] | None = None) -> tuple[Arc, ...]:
        """Arcs of the diagram inside the probe range (the exact finite proxy)."""
        if self.model.is_finite:
            return self.materialize()
        return self.materialize(probe or self.probe_range())

    def crosses_any(self, arc: Arc) -> bool:
        """Whether any arc of the diagram, fountain tails included, crosses ``arc``."""
        if self.model.is_finite:
            return any(_crosses(arc, x) for x in self.arcs)
        return any(_crosses(arc, x) for x in self.arcs) or any(f.crosses(arc) for f in self.fountains)

    def __str__(self) -> str:
        parts = ["{" + ",".join(str(a) for a in self.sorted_arcs()) + "}"]
        parts += [f"{f.side} fountain {f}" for f in sorted(self.fountains)]
        return " u ".join(parts)


# -- operations on arcs -------------------------------------------------------


def crosses(model: Model, x: Arc, y: Arc) -> bool:
    """Whether two arcs of ``model`` cross; edges and shared endpoints never do."""
    x, y = Arc.of(*x), Arc.of(*y)
    model.check(x)
    model.check(y)
    return _crosses(x, y)


def shift(model: Model, x: Arc, k: int = 1) -> Arc:
    """The shifted arc ``x[k] = {a-k, b-k}``, reduced cyclically in a polygon."""
    x = Arc.of(*x)
    model.check(x)
    if model.is_finite:
        return Arc.of(model.reduce(x.a - k), model.reduce(x.b - k))
    out = _shift_raw(x, k)
    lo, hi = model.window
    if out.a < lo or out.b > hi:
        raise WindowOverflow(f"{x}[{k}] = {out} leaves the window [{lo},{hi}]")
    return out


def ext1_dim(model: Model, x: Arc, y: Arc) -> int:
    """Dimension of ``Ext^1(M_x, M_y)``: one exactly when the arcs cross."""
    x, y = Arc.of(*x), Arc.of(*y)
    if model.is_edge(x) or model.is_edge(y):
        model.check(x)
        model.check(y)
        return 0
    return int(crosses(model, x, y))


def hom_dim(model: Model, x: Arc, y: Arc) -> int:
    """Dimension of ``Hom(M_x, M_y) = Ext^1(M_x, M_y[-1])``."""
    return ext1_dim(model, x, shift(model, y, -1))


def exchange_triangles(model: Model, x: Arc, y: Arc) -> tuple[ExchangeTriangle, ExchangeTriangle]:
    """The two non-split triangles linking a crossing pair of arcs.

    Writing the pair as ``{a,b}``, ``{c,d}`` with ``a < c < b < d`` the
    triangles are ``(a,b) -> (a,d)+(c,b) -> (c,d)`` and
    ``(c,d) -> (a,c)+(b,d) -> (a,b)``.  The first returned triangle starts at
    ``x``.
    """
    x, y = Arc.of(*x), Arc.of(*y)
    if not crosses(model, x, y):
        raise ArcError(f"{x} and {y} do not cross")
    return _exchange(model, x, y)


def _exchange(model: Model, x: Arc, y: Arc) -> tuple[ExchangeTriangle, ExchangeTriangle]:
    low, high = (x, y) if x.a < y.a else (y, x)
    a, b = low
    c, d = high

    def middle(*pairs):
        return tuple(sorted(Arc.of(p, q) for p, q in pairs if not model.is_edge(Arc.of(p, q))))

    from_low = ExchangeTriangle(low, middle((a, d), (c, b)), high)
    from_high = ExchangeTriangle(high, middle((a, c), (b, d)), low)
    return (from_low, from_high) if low == x else (from_high, from_low)


def four_sides(x: Arc, y: Arc) -> tuple[Arc, Arc, Arc, Arc]:
    """The four sides of the quadrilateral spanned by two crossing arcs."""
    low, high = (x, y) if x.a < y.a else (y, x)
    a, b = low
    c, d = high
    return Arc(a, c), Arc(c, b), Arc(b, d), Arc(a, d)


def materialize(d: Diagram, window: tuple[int, int]) -> tuple[Arc, ...]:
    """Finite view of a diagram inside ``window`` (which must sit inside the model's)."""
    if d.model.is_finite:
        return d.materialize()
    lo, hi = window
    mlo, mhi = d.model.window
    if lo < mlo or hi > mhi or lo > hi:
        raise WindowOverflow(f"window [{lo},{hi}] is not inside the model window [{mlo},{mhi}]")
    return d.materialize((lo, hi))


def shift_diagram(d: Diagram, k: int = 1, *, unbounded: bool = False) -> Diagram:
    """Shift every arc and fountain of ``d`` by ``k``.

    With ``unbounded`` an infinite model's window is widened by ``|k|`` so the
    result never overflows.
    """
    model = d.model
    if model.is_finite:
        return Diagram(model, [shift(model, a, k) for a in d.arcs])
    if unbounded:
        model = model.widened(abs(k))
    return Diagram(model, [_shift_raw(a, k) for a in d.arcs], [f.shifted(k) for f in d.fountains])


def as_diagram(model: Model, arcs: Diagram | Iterable) -> Diagram:
    """Accept either a diagram or an iterable of vertex pairs."""
    if isinstance(arcs, Diagram):
        if arcs.model != model:
            raise DiagramError(f"diagram lives in {arcs.model}, expected {model}")
        return arcs
    return Diagram(model, list(arcs))
