"""Acceptance criteria, one test each.

Every test records a PASS/FAIL line through the ``acceptance`` fixture; the
lines are printed at the end of the pytest run.
"""

import itertools
import subprocess
import sys
import time

import pytest

import oracles
from ptolemy import (
    Arc,
    Diagram,
    Model,
    classify,
    core,
    d_cells,
    ext_projectives,
    hom_dim,
    is_ptolemy,
    is_torsion_closure,
    mutate,
    parse,
    perp_right,
    serialize,
    shift,
    shift_diagram,
    theorem_suite,
)
from ptolemy.arcs import Fountain
from ptolemy.enumeration import all_ptolemy, all_subsets
from ptolemy.torsion import CLUSTER_TILTING, intersection

OCTAGON_ARCS = [(2, 7), (2, 8), (3, 7), (3, 8), (4, 6), (4, 7), (5, 7)]


def pairs(d):
    return {tuple(a) for a in d.arcs}


def test_criterion_1_octagon(acceptance):
    start = time.perf_counter()
    u = Diagram(Model.finite(8), OCTAGON_ARCS)
    c = core(u)
    cells = [c.vertices for c in d_cells(u, [(3, 7)]).cells]
    v = mutate(u, [(3, 7)])
    elapsed = time.perf_counter() - start

    checks = {
        "core": pairs(c) == {(2, 8), (3, 7), (4, 7)},
        "cells": sorted(cells) == [(1, 2, 3, 7, 8), (3, 4, 5, 6, 7)],
        "mutation": pairs(v) == {(1, 3), (1, 7), (2, 7), (3, 5), (3, 6), (4, 6), (3, 7)},
        "time": elapsed < 1.0,
    }
    ok = all(checks.values())
    acceptance(1, ok, f"octagon core, cells and mutation {checks} in {elapsed:.3f}s (< 1s)")
    assert ok


def _fountain_run(window):
    u = Diagram(Model.infinite(*window), [(1, 3), (1, 4), (2, 4), (1, 5)], [(1, "left", -1)])
    part = d_cells(u, [(1, 5)])
    return u, core(u), part, mutate(u, [(1, 5)])


def test_criterion_2_fountain(acceptance):
    start = time.perf_counter()
    u, c, part, v = _fountain_run((-12, 12))
    _, c2, part2, v2 = _fountain_run((-20, 20))
    elapsed = time.perf_counter() - start
    w = (-12, 12)

    finite = [x.vertices for x in part.cells if not x.is_infinite]
    infinite = [x for x in part.cells if x.is_infinite]

    def inside(cells):
        return sorted(tuple(v for v in x.vertices if w[0] <= v <= w[1]) for x in cells)

    checks = {
        "core": pairs(c) == {(1, 4), (1, 5)} and c.fountains == {Fountain(1, "left", -1)},
        "cells": finite == [(1, 2, 3, 4, 5)] and len(infinite) == 1
        and all(v in infinite[0] for v in (-50, 0, 1, 5, 50)) and not any(v in infinite[0] for v in (2, 3, 4)),
        "mutation": pairs(v) == {(1, 3), (2, 5), (3, 5), (1, 5)} and v.fountains == {Fountain(0, "left", -2)},
        "stable": c.materialize(w) == c2.materialize(w) and v.materialize(w) == v2.materialize(w)
        and inside(part.cells) == inside(part2.cells),
        "time": elapsed < 1.0,
    }
    ok = all(checks.values())
    acceptance(2, ok, f"infinity-gon core, cells, mutation, window [-20,20] stability {checks} in {elapsed:.3f}s (< 1s)")
    assert ok


def test_criterion_3_dual_oracle(acceptance):
    start = time.perf_counter()
    disagreements, total = 0, 0
    for m in (6, 7):
        for u in all_subsets(m):
            total += 1
            if bool(is_ptolemy(u)) != is_torsion_closure(u):
                disagreements += 1
    elapsed = time.perf_counter() - start
    ok = disagreements == 0 and total == 2 ** 9 + 2 ** 14 and elapsed < 10
    acceptance(3, ok, f"is_ptolemy <=> is_torsion_closure on {total} subsets: "
                      f"{disagreements} disagreements in {elapsed:.2f}s (< 10s)")
    assert ok


SUITE_CHECKS = [
    "ptolemy_preservation",
    "cardinality_bijection",
    "core_transport",
    "inverse_identity",
    "strict_change",
    "fixed_point",
    "empty_is_rotation",
    "triangle_verification",
]


def test_criterion_4_theorem_suite(acceptance):
    start = time.perf_counter()
    reports = [theorem_suite(6), theorem_suite(7)]
    elapsed = time.perf_counter() - start
    failures = sum(r.check(n).failures for r in reports for n in SUITE_CHECKS)
    instances = sum(r.check(n).instances for r in reports for n in SUITE_CHECKS)
    empty = [n for n in SUITE_CHECKS if any(r.check(n).instances == 0 for r in reports)]
    ok = failures == 0 and not empty and elapsed < 60
    acceptance(4, ok, f"mutation theorems on P_6 and P_7: {instances} instances, "
                      f"{failures} failures in {elapsed:.2f}s (< 60s)")
    assert ok


def test_criterion_5_core_identities(acceptance):
    failures, total = 0, 0
    for m in (6, 7):
        for u in all_ptolemy(m):
            y = perp_right(u)
            total += 1
            if core(u) != intersection(u, shift_diagram(y, -1)):
                failures += 1
            if ext_projectives(y) != shift_diagram(core(u), 1):
                failures += 1
    ok = failures == 0
    acceptance(5, ok, f"core = U n U^perp[-1] and P(U^perp) = core[1] on {total} diagrams: {failures} failures")
    assert ok


def _duality_failures(k):
    """Count pairs with hom(x, y) != hom(y, x[k]) over the stated ranges."""
    failures, total = 0, 0
    for m in range(4, 11):
        model = Model.finite(m)
        for x, y in itertools.product(model.diagonals(), repeat=2):
            total += 1
            failures += hom_dim(model, x, y) != hom_dim(model, y, shift(model, x, k))
    # Arcs inside [-8,8]; the larger model leaves room for the shifts.
    model = Model.infinite(-12, 12)
    arcs = list(model.arcs_within(-8, 8))
    for x, y in itertools.product(arcs, repeat=2):
        total += 1
        failures += hom_dim(model, x, y) != hom_dim(model, y, shift(model, x, k))
    return failures, total


@pytest.mark.xfail(
    strict=True,
    reason="with Hom(x,y) = Ext^1(x, y[-1]) the duality needs x[2]; x[-2] fails already at "
           "hom({2,5},{2,5}) = 1 != hom({2,5},{4,7}) = 0 on P_8",
)
def test_criterion_6_duality_as_stated(acceptance):
    failures, total = _duality_failures(-2)
    acceptance(6, failures == 0, f"hom(x,y) = hom(y, x[-2]) on {total} pairs: {failures} failures "
                                 "(unattainable as stated; see criterion 6 with x[2])")
    assert failures == 0


def test_criterion_6_duality_serre_sign(acceptance):
    failures, total = _duality_failures(2)
    acceptance("6 (x[2])", failures == 0, f"hom(x,y) = hom(y, x[2]) on {total} pairs: {failures} failures")
    assert failures == 0


def test_criterion_6_literal_counterexample():
    model = Model.finite(8)
    x = Arc(2, 5)
    assert hom_dim(model, x, x) == 1
    assert shift(model, x, -2) == Arc(4, 7)
    assert hom_dim(model, x, Arc(4, 7)) == 0
    assert hom_dim(model, x, shift(model, x, 2)) == 1


def test_criterion_7_cluster_tilting(acceptance):
    model = Model.finite(6)
    tilting = {frozenset(pairs(u)) for u in all_ptolemy(6) if CLUSTER_TILTING in classify(u).flags}
    maximal = oracles.maximal_noncrossing(6)
    ok = tilting == maximal and len(maximal) == 14
    acceptance(7, ok, f"P_6 cluster tilting diagrams ({len(tilting)}) = maximal non-crossing sets "
                      f"from the brute-force scan ({len(maximal)})")
    assert model.gon == 6
    assert ok


def test_criterion_8_round_trip_and_determinism(acceptance, fixtures):
    docs = sorted(fixtures.glob("*.json"))
    round_trip = all(serialize(parse(p.read_text())) == p.read_text() for p in docs)
    cmd = [sys.executable, "-m", "ptolemy", "verify", "--gon", "6"]
    first = subprocess.run(cmd, capture_output=True, check=False)
    second = subprocess.run(cmd, capture_output=True, check=False)
    same = first.stdout == second.stdout and first.returncode == second.returncode == 0
    ok = round_trip and same and len(docs) >= 2
    acceptance(8, ok, f"round trip on {len(docs)} fixture documents: {round_trip}; "
                      f"'verify --gon 6' byte-identical across two runs: {same}")
    assert ok
