"""Exhaustive enumeration over small polygons.

Subsets of diagonals are bit masks: diagonal ``i`` of
``Model.finite(gon).diagonals()`` (lexicographic order) is bit ``i``.
Two independent vectorized scans pick out the Ptolemy diagrams: one applies
the four-sides rule, the other keeps the fixed points of the double
perpendicular built from Hom dimensions.
"""

from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, Iterator

import numpy as np

from .arcs import Diagram, Model, _crosses, four_sides, hom_dim, shift_diagram
from .errors import PtolemyError
from .mutation import INVERSE, d_cells, mutate, mutate_arc, verify_mutation_triangle
from .torsion import (
    CLUSTER_TILTING,
    MAXIMAL_RIGID,
    RIGID,
    classify,
    core,
    ext_projectives,
    intersection,
    is_ptolemy,
    perp_left,
    perp_right,
)

MIN_GON = 4
MAX_GON = 9
#: Largest gon handled without an explicit opt-in.
DEFAULT_MAX_GON = 7
_CHUNK = 1 << 20

POLICIES = ("all_subsets", "singletons", "full_core", "empty_only")


class UnsupportedGon(PtolemyError, ValueError):
    pass


def check_gon(gon: int, *, large: bool = False, limit: int = MAX_GON) -> None:
    top = limit if large else min(limit, DEFAULT_MAX_GON)
    if not MIN_GON <= gon <= top:
        hint = "" if large or gon > limit else " (opt in with large=True or --large)"
        raise UnsupportedGon(f"gon {gon} is outside the supported range {MIN_GON}..{top}{hint}")


@lru_cache(maxsize=None)
def _tables(gon: int):
    model = Model.finite(gon)
    diagonals = model.diagonals()
    index = {x: i for i, x in enumerate(diagonals)}
    required = []
    for i, j in itertools.combinations(range(len(diagonals)), 2):
        x, y = diagonals[i], diagonals[j]
        if _crosses(x, y):
            need = 0
            for side in four_sides(x, y):
                if not model.is_edge(side):
                    need |= 1 << index[side]
            required.append((i, j, need))
    hom_out = [0] * len(diagonals)
    hom_in = [0] * len(diagonals)
    for i, x in enumerate(diagonals):
        for j, y in enumerate(diagonals):
            if hom_dim(model, x, y):
                hom_out[i] |= 1 << j
                hom_in[j] |= 1 << i
    return model, diagonals, required, hom_out, hom_in


def mask_to_diagram(gon: int, mask: int) -> Diagram:
    model, diagonals, *_ = _tables(gon)
    return Diagram(model, [diagonals[i] for i in range(len(diagonals)) if mask >> i & 1])


def diagram_to_mask(u: Diagram) -> int:
    _, diagonals, *_ = _tables(u.model.gon)
    return sum(1 << i for i, x in enumerate(diagonals) if x in u.arcs)


def _scan(gon: int, keep: Callable[[np.ndarray], np.ndarray]) -> np.ndarray:
    n = len(_tables(gon)[1])
    out = []
    for start in range(0, 1 << n, _CHUNK):
        masks = np.arange(start, min(start + _CHUNK, 1 << n), dtype=np.int64)
        out.append(masks[keep(masks)])
    return np.concatenate(out)


def ptolemy_masks(gon: int) -> np.ndarray:
    """Masks of all subsets passing the four-sides rule, ascending."""
    _, _, required, _, _ = _tables(gon)

    def keep(masks):
        bad = np.zeros(masks.shape, dtype=bool)
        for i, j, need in required:
            both = ((masks >> i) & (masks >> j) & 1).astype(bool)
            bad |= both & ((masks & need) != need)
        return ~bad

    return _scan(gon, keep)


def _perp(gon: int, masks: np.ndarray, table) -> np.ndarray:
    n = len(table)
    hit = np.zeros_like(masks)
    for i, row in enumerate(table):
        hit |= np.where((masks >> i) & 1, row, 0)
    return ((1 << n) - 1) & ~hit


def _double_perp(gon: int, masks: np.ndarray) -> np.ndarray:
    _, _, _, hom_out, hom_in = _tables(gon)
    return _perp(gon, _perp(gon, masks, hom_out), hom_in)


def closure_masks(gon: int) -> np.ndarray:
    """Masks equal to their double perpendicular, ascending.

    Shares nothing with :func:`ptolemy_masks` beyond the Hom dimension of
    pairs of diagonals.
    """
    return _scan(gon, lambda masks: _double_perp(gon, masks) == masks)


def all_ptolemy(gon: int, *, large: bool = False) -> Iterator[Diagram]:
    """Every Ptolemy diagram of the ``gon``-gon, in ascending mask order."""
    check_gon(gon, large=large)
    for mask in ptolemy_masks(gon):
        yield mask_to_diagram(gon, int(mask))


def all_subsets(gon: int) -> Iterator[Diagram]:
    """Every subset of diagonals, in ascending mask order."""
    n = len(_tables(gon)[1])
    for mask in range(1 << n):
        yield mask_to_diagram(gon, mask)


def subsets_of(d: Diagram) -> Iterator[Diagram]:
    arcs = d.sorted_arcs()
    for r in range(len(arcs) + 1):
        for combo in itertools.combinations(arcs, r):
            yield Diagram(d.model, combo)


# -- orbit graph ----------------------------------------------------------


@dataclass(frozen=True)
class OrbitEdge:
    source: Diagram
    d: Diagram
    target: Diagram


@dataclass(frozen=True)
class OrbitGraph:
    gon: int
    policy: str
    nodes: tuple[Diagram, ...]
    edges: tuple[OrbitEdge, ...]


def _mutating_sets(u: Diagram, policy: str) -> Iterator[Diagram]:
    c = core(u)
    if policy == "all_subsets":
        yield from subsets_of(c)
    elif policy == "singletons":
        for x in c.sorted_arcs():
            yield Diagram(u.model, [x])
    elif policy == "full_core":
        yield c
    elif policy == "empty_only":
        yield Diagram(u.model)
    else:
        raise ValueError(f"unknown policy {policy!r}; choose from {', '.join(POLICIES)}")


def orbit_graph(gon: int, policy: str, *, large: bool = False) -> OrbitGraph:
    """Ptolemy diagrams as nodes, one edge ``U -> mutate(U, D)`` per ``D`` allowed by ``policy``."""
    if policy not in POLICIES:
        raise ValueError(f"unknown policy {policy!r}; choose from {', '.join(POLICIES)}")
    nodes = sorted(all_ptolemy(gon, large=large), key=Diagram.key)
    edges = []
    for u in nodes:
        for d in _mutating_sets(u, policy):
            edges.append(OrbitEdge(u, d, mutate(u, d)))
    return OrbitGraph(gon, policy, tuple(nodes), tuple(edges))


# -- theorem suite ----------------------------------------------------------


@dataclass
class Check:
    name: str
    description: str
    instances: int = 0
    failures: int = 0
    counterexample: str | None = None
    observation: bool = False

    def record(self, ok: bool, witness: Callable[[], str]) -> None:
        self.instances += 1
        if not ok:
            self.failures += 1
            if self.counterexample is None:
                self.counterexample = witness()


@dataclass
class SuiteReport:
    gon: int
    checks: list[Check] = field(default_factory=list)
    seconds: float = 0.0

    @property
    def failures(self) -> int:
        return sum(c.failures for c in self.checks if not c.observation)

    @property
    def ok(self) -> bool:
        return self.failures == 0

    def check(self, name: str) -> Check:
        return next(c for c in self.checks if c.name == name)

    def lines(self) -> list[str]:
        out = [f"theorem suite for the {self.gon}-gon"]
        for c in self.checks:
            tag = "observed" if c.observation else ("PASS" if c.failures == 0 else "FAIL")
            out.append(f"{tag:8} {c.name:32} instances={c.instances:<7} failures={c.failures}  {c.description}")
            if c.counterexample:
                out.append(f"         first counterexample: {c.counterexample}")
        out.append(f"total failures: {self.failures}")
        return out

    def __str__(self) -> str:
        return "\n".join(self.lines())


def theorem_suite(gon: int, *, large: bool = False) -> SuiteReport:
    """Run every exhaustive invariant on the ``gon``-gon.

    Diagrams are visited by size, then lexicographically, so the first
    counterexample recorded for a check is a minimal one.
    """
    check_gon(gon, large=large, limit=8)
    started = time.perf_counter()
    entries = [
        ("oracle_agreement", "four-sides rule <=> equal to double perpendicular, all subsets"),
        ("double_perp_extensive", "U is contained in its double perpendicular, all subsets"),
        ("double_perp_idempotent", "double perpendicular is idempotent, all subsets"),
        ("enumeration_agreement", "vectorized scans agree with each other and with is_ptolemy"),
        ("core_is_x_cap_y_shifted", "core(U) = U n U^perp[-1]"),
        ("projectives_are_core_shifted", "Ext-projectives of U^perp = core(U)[1]"),
        ("classification_implications", "cluster tilting => maximal rigid => rigid"),
        ("cluster_tilting_is_maximal_rigid", "cluster tilting <=> maximal rigid"),
        ("ptolemy_preservation", "mutate(U, D) is Ptolemy"),
        ("cardinality_bijection", "mutation is a bijection on arcs"),
        ("core_transport", "core(mutate(U, D)) = mutated core"),
        ("inverse_identity", "inverse mutation undoes mutation"),
        ("strict_change", "D strictly inside the core changes core and diagram"),
        ("fixed_point", "D = core leaves U fixed"),
        ("empty_is_rotation", "D = {} rotates U by [1]"),
        ("triangle_verification", "every interior arc passes its triangle checks"),
    ]
    report = SuiteReport(gon, [Check(n, desc) for n, desc in entries])
    report.check("cluster_tilting_is_maximal_rigid").observation = True
    chk = report.check

    if gon <= DEFAULT_MAX_GON:
        ptolemy = _subset_checks(report)
    else:
        ptolemy = _subset_checks_vectorized(report)

    for u in ptolemy:
        y = perp_right(u)
        c = core(u)
        chk("core_is_x_cap_y_shifted").record(
            c == intersection(u, shift_diagram(y, -1)), lambda: f"U={u}"
        )
        chk("projectives_are_core_shifted").record(
            ext_projectives(y) == shift_diagram(c, 1), lambda: f"U={u}"
        )
        flags = classify(u).flags
        chk("classification_implications").record(
            (CLUSTER_TILTING not in flags or MAXIMAL_RIGID in flags)
            and (MAXIMAL_RIGID not in flags or RIGID in flags),
            lambda: f"U={u} flags={sorted(flags)}",
        )
        chk("cluster_tilting_is_maximal_rigid").record(
            (CLUSTER_TILTING in flags) == (MAXIMAL_RIGID in flags),
            lambda: f"U={u} flags={sorted(flags)}",
        )
        for d in subsets_of(c):
            _mutation_checks(report, u, c, d)

    report.seconds = time.perf_counter() - started
    return report


def _subset_checks(report: SuiteReport) -> list[Diagram]:
    """All-subset checks through the library functions, one diagram at a time."""
    chk = report.check
    gon = report.gon
    subsets = sorted(all_subsets(gon), key=lambda u: (len(u.arcs), u.key()))
    ptolemy = []
    for u in subsets:
        closure = perp_left(perp_right(u))
        p = bool(is_ptolemy(u))
        chk("oracle_agreement").record(p == (closure == u), lambda: f"U={u} ptolemy={p}")
        chk("double_perp_extensive").record(u.arcs <= closure.arcs, lambda: f"U={u}")
        chk("double_perp_idempotent").record(
            perp_left(perp_right(closure)) == closure, lambda: f"U={u}"
        )
        if p:
            ptolemy.append(u)

    vector_p = {int(m) for m in ptolemy_masks(gon)}
    vector_c = {int(m) for m in closure_masks(gon)}
    direct = {diagram_to_mask(u) for u in ptolemy}
    chk("enumeration_agreement").record(
        vector_p == vector_c == direct,
        lambda: f"four-sides={len(vector_p)} closure={len(vector_c)} direct={len(direct)}",
    )
    return ptolemy


def _subset_checks_vectorized(report: SuiteReport) -> list[Diagram]:
    """The same all-subset checks on bit masks, for polygons too big to loop over."""
    chk = report.check
    gon = report.gon
    n = len(_tables(gon)[1])
    masks = np.arange(1 << n, dtype=np.int64)
    closure = _double_perp(gon, masks)
    p = np.isin(masks, ptolemy_masks(gon))

    def record(name, ok):
        c = chk(name)
        c.instances += len(ok)
        bad = [mask_to_diagram(gon, int(m)) for m in masks[~ok]]
        c.failures += len(bad)
        if bad and c.counterexample is None:
            c.counterexample = f"U={min(bad, key=lambda u: (len(u.arcs), u.key()))}"

    record("oracle_agreement", p == (closure == masks))
    record("double_perp_extensive", (masks & ~closure) == 0)
    record("double_perp_idempotent", _double_perp(gon, closure) == closure)

    found = ptolemy_masks(gon)
    fixed = masks[closure == masks]
    chk("enumeration_agreement").record(
        np.array_equal(found, fixed), lambda: f"four-sides={len(found)} closure={len(fixed)}"
    )
    ptolemy = [mask_to_diagram(gon, int(m)) for m in found]
    return sorted(ptolemy, key=lambda u: (len(u.arcs), u.key()))


def _mutation_checks(report: SuiteReport, u: Diagram, c: Diagram, d: Diagram) -> None:
    chk = report.check
    where = lambda: f"U={u} D={d}"  # noqa: E731
    part = d_cells(u, d)
    v = mutate(u, d)

    chk("ptolemy_preservation").record(bool(is_ptolemy(v)), where)

    images = [mutate_arc(part.cells[i], x) for x, i in part.interior.items()]
    arc_map = images + d.sorted_arcs()
    chk("cardinality_bijection").record(
        len(v.arcs) == len(u.arcs) and set(arc_map) == v.arcs and len(set(arc_map)) == len(arc_map),
        where,
    )

    moved = {mutate_arc(part.cell_of(x), x) if x not in d.arcs else x for x in c.arcs}
    chk("core_transport").record(core(v).arcs == moved, where)

    chk("inverse_identity").record(mutate(v, d, INVERSE) == u, where)

    if d.arcs < c.arcs:
        chk("strict_change").record(core(v) != c and v != u, where)
    else:
        chk("fixed_point").record(v == u, where)

    if not d.arcs:
        chk("empty_is_rotation").record(v == shift_diagram(u, 1), where)

    for x in sorted(part.interior):
        try:
            verify_mutation_triangle(u, d, x, part)
            ok = True
        except PtolemyError:
            ok = False
        chk("triangle_verification").record(ok, lambda: f"U={u} D={d} x={x}")


__all__ = [
    "Check",
    "OrbitEdge",
    "OrbitGraph",
    "POLICIES",
    "SuiteReport",
    "UnsupportedGon",
    "all_ptolemy",
    "all_subsets",
    "check_gon",
    "closure_masks",
    "diagram_to_mask",
    "mask_to_diagram",
    "orbit_graph",
    "ptolemy_masks",
    "subsets_of",
    "theorem_suite",
]
