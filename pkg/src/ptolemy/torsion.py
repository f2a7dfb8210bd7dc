"""Torsion pairs read off arc diagrams.

A set of arcs ``U`` gives the torsion pair ``(U, U^perp)`` exactly when it is
a Ptolemy diagram.  This module checks the Ptolemy rule, computes
perpendicular categories and cores, and classifies the resulting pairs.
The double perpendicular test :func:`is_torsion_closure` goes through Hom
dimensions only and serves as an independent oracle for :func:`is_ptolemy`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import NamedTuple

from .arcs import (
    LEFT,
    RIGHT,
    Arc,
    Diagram,
    Fountain,
    Model,
    _crosses,
    four_sides,
    shift_diagram,
)
from .errors import NotPtolemy

T_STRUCTURE = "t_structure"
RIGID = "rigid"
MAXIMAL_RIGID = "maximal_rigid"
CLUSTER_TILTING = "cluster_tilting"
PLAIN = "plain"


class Violation(NamedTuple):
    """A crossing pair of the diagram and the first induced arc it lacks."""

    pair: tuple[Arc, Arc]
    missing: Arc | None
    note: str = ""

    def __str__(self) -> str:
        if self.missing is None:
            return self.note
        x, y = self.pair
        return f"{x} crosses {y} but {self.missing} is missing"


@dataclass(frozen=True)
class PtolemyReport:
    ok: bool
    violations: tuple[Violation, ...] = ()

    def __bool__(self) -> bool:
        return self.ok


@dataclass(frozen=True)
class TorsionClassification:
    kind: str
    flags: frozenset[str] = field(default_factory=frozenset)

    def __str__(self) -> str:
        return f"{self.kind} ({', '.join(sorted(self.flags)) or 'no special flags'})"


@lru_cache(maxsize=None)
def _crossing_table(gon: int) -> dict[Arc, frozenset[Arc]]:
    diagonals = Model.finite(gon).diagonals()
    return {x: frozenset(y for y in diagonals if _crosses(x, y)) for x in diagonals}


def _noncrossing(v: Diagram, model: Model) -> Diagram:
    """All arcs of ``model`` crossing no arc of ``v``.

    Infinite models get the windowed answer: arcs inside the window plus the
    fountain tails that continue past its edge.
    """
    if model.is_finite:
        table = _crossing_table(model.gon)
        blocked = set()
        for x in v.arcs:
            blocked |= table[x]
        return Diagram(model, [w for w in model.diagonals() if w not in blocked])

    lo, hi = model.window
    plo, phi = v.probe_range(Diagram(model))
    inside = [w for w in model.arcs_within(lo, hi) if not v.crosses_any(w)]
    tails = []
    for vertex in range(lo, hi + 1):
        # Far free endpoints behave like the probe edge; scan inward from there.
        t = plo
        while t <= vertex - 2 and not v.crosses_any(Arc(t, vertex)):
            t += 1
        if t > plo:
            tails.append(Fountain(vertex, LEFT, t - 1))
        t = phi
        while t >= vertex + 2 and not v.crosses_any(Arc(vertex, t)):
            t -= 1
        if t < phi:
            tails.append(Fountain(vertex, RIGHT, t + 1))
    return Diagram.clipped(model, inside, tails)


def perp_right(u: Diagram) -> Diagram:
    """``U^perp``: every arc ``w`` with ``Hom(u, w) = 0`` for all ``u`` in ``U``.

    ``Hom(u, w)`` is nonzero iff ``u`` crosses ``w[-1]``, iff ``u[1]`` crosses
    ``w``, so this is the set of arcs crossing nothing in ``U[1]``.
    """
    return _noncrossing(shift_diagram(u, 1, unbounded=True), u.model)


def perp_left(u: Diagram) -> Diagram:
    """``perp U``: every arc ``w`` with ``Hom(w, u) = 0`` for all ``u`` in ``U``."""
    return _noncrossing(shift_diagram(u, -1, unbounded=True), u.model)


def is_ptolemy(u: Diagram) -> PtolemyReport:
    """Check the four-sides rule at every crossing, plus the fountain rule.

    For each crossing pair the first missing side (in sorted order) is
    reported; sides that are edges are exempt.  In the infinite model every
    right fountain must also be a left fountain.
    """
    model = u.model
    arcs = u.probe_arcs()
    violations = []
    for i, x in enumerate(arcs):
        for y in arcs[i + 1:]:
            if not _crosses(x, y):
                continue
            for side in sorted(four_sides(x, y)):
                if not model.is_edge(side) and side not in u:
                    violations.append(Violation((x, y), side))
                    break
    if not model.is_finite:
        lefts = {f.vertex for f in u.fountains if f.side == LEFT}
        for f in sorted(u.fountains):
            if f.side == RIGHT and f.vertex not in lefts:
                violations.append(
                    Violation((), None, f"right fountain at {f.vertex} is not a left fountain")
                )
    return PtolemyReport(not violations, tuple(violations))


def require_ptolemy(u: Diagram) -> None:
    report = is_ptolemy(u)
    if not report:
        raise NotPtolemy(f"not a Ptolemy diagram: {report.violations[0]}")


def _uncrossed(u: Diagram) -> Diagram:
    if u.model.is_finite:
        table = _crossing_table(u.model.gon)
        return Diagram(u.model, [x for x in u.arcs if not (table[x] & u.arcs)])
    probe = u.probe_range()
    keep = [x for x in u.probe_arcs(probe) if not u.crosses_any(x)]
    tails = []
    for f in u.fountains:
        far = Arc(probe[0], f.vertex) if f.side == LEFT else Arc(f.vertex, probe[1])
        if not u.crosses_any(far):
            tails.append(Fountain(f.vertex, f.side, far.a if f.side == LEFT else far.b))
    return Diagram(u.model, keep, tails)


def core(u: Diagram) -> Diagram:
    """The arcs of ``U`` crossing nothing in ``U`` (its Ext-injectives)."""
    return _uncrossed(u)


def ext_projectives(v: Diagram) -> Diagram:
    """Ext-projectives of ``V``.

    Ext^1 is symmetric in a 2-Calabi-Yau category, so these are again the
    arcs of ``V`` crossing nothing in ``V``.
    """
    return _uncrossed(v)


def is_torsion_closure(u: Diagram) -> bool:
    """Whether ``U`` equals its double perpendicular ``perp(U^perp)``.

    Exact in the finite model.  In the infinite model ``U^perp`` is computed
    on a window enlarged by the window's own length and the comparison is
    made inside the original window.
    """
    model = u.model
    if model.is_finite:
        return perp_left(perp_right(u)) == u
    lo, hi = model.window
    wide = u.replace(model=model.widened(hi - lo))
    y = perp_right(wide)
    x = _noncrossing(shift_diagram(y, -1, unbounded=True), model)
    return x.materialize() == u.materialize()


def classify(u: Diagram) -> TorsionClassification:
    """Classify the torsion pair ``(U, U^perp)`` of a Ptolemy diagram.

    Flags: ``t_structure`` iff the core is empty; ``rigid`` iff the core is
    all of ``U``; ``maximal_rigid`` iff rigid and every arc outside ``U``
    crosses some arc of ``U``; ``cluster_tilting`` iff ``U^perp = U[1]``.
    Infinite models are judged inside their window.
    """
    require_ptolemy(u)
    model = u.model
    c = core(u)
    flags = set()
    if not c:
        flags.add(T_STRUCTURE)
    if c == u:
        flags.add(RIGID)
        if model.is_finite:
            others = [w for w in model.diagonals() if w not in u.arcs]
        else:
            lo, hi = model.window
            others = [w for w in model.arcs_within(lo, hi) if w not in u]
        if all(u.crosses_any(w) for w in others):
            flags.add(MAXIMAL_RIGID)
    if _perp_is_shift(u):
        flags.add(CLUSTER_TILTING)

    for kind in (T_STRUCTURE, CLUSTER_TILTING, MAXIMAL_RIGID, RIGID):
        if kind in flags:
            return TorsionClassification(kind, frozenset(flags))
    return TorsionClassification(PLAIN, frozenset(flags))


def _perp_is_shift(u: Diagram) -> bool:
    if u.model.is_finite:
        return perp_right(u) == shift_diagram(u, 1)
    lo, hi = u.model.window
    inner = (lo + 2, hi - 2)
    shifted = shift_diagram(u, 1, unbounded=True)
    return perp_right(u).materialize(inner) == shifted.materialize(inner)


def intersection(x: Diagram, y: Diagram) -> Diagram:
    """Intersection of two finite diagrams."""
    return Diagram(x.model, x.arcs & y.arcs)


__all__ = [
    "PtolemyReport",
    "TorsionClassification",
    "Violation",
    "classify",
    "core",
    "ext_projectives",
    "intersection",
    "is_ptolemy",
    "is_torsion_closure",
    "perp_left",
    "perp_right",
    "require_ptolemy",
]
