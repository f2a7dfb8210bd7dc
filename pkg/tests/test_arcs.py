import itertools

import pytest
from hypothesis import given
from hypothesis import strategies as st

import oracles
from ptolemy import (
    Arc,
    ArcError,
    Diagram,
    DiagramError,
    Model,
    WindowOverflow,
    crosses,
    exchange_triangles,
    ext1_dim,
    hom_dim,
    materialize,
    shift,
    shift_diagram,
)
from ptolemy.arcs import Fountain

OCT = Model.finite(8)
LINE = Model.infinite(-12, 12)


def fountain_example():
    return Diagram(LINE, [(1, 3), (1, 4), (2, 4), (1, 5)], [(1, "left", -1)])


# -- models and arcs


def test_arc_normalizes():
    assert OCT.arc(7, 2) == Arc(2, 7)
    assert str(Arc(2, 7)) == "{2,7}"


@pytest.mark.parametrize("bad", [(0, 3), (2, 9), (3, 3)])
def test_finite_arc_range(bad):
    with pytest.raises(ArcError):
        OCT.arc(*bad)


def test_model_limits():
    with pytest.raises(ArcError):
        Model.finite(3)
    with pytest.raises(ArcError):
        Model.infinite(0, 4)
    Model.infinite(0, 5)


def test_edges():
    assert OCT.is_edge(Arc(1, 2)) and OCT.is_edge(Arc(1, 8))
    assert not OCT.is_edge(Arc(1, 3))
    assert LINE.is_edge(Arc(4, 5)) and not LINE.is_edge(Arc(-12, 12))


def test_diagonal_count():
    for m in range(4, 12):
        assert len(Model.finite(m).diagonals()) == m * (m - 3) // 2
        assert list(Model.finite(m).diagonals()) == oracles.diagonals(m)


def test_diagram_rejects_edges_and_fountains_in_polygons():
    with pytest.raises(DiagramError):
        Diagram(OCT, [(1, 2)])
    with pytest.raises(DiagramError):
        Diagram(OCT, [(1, 3)], [(1, "left", -1)])


def test_diagram_window_overflow():
    with pytest.raises(WindowOverflow):
        Diagram(LINE, [(10, 14)])


def test_fountain_bounds_checked():
    with pytest.raises(DiagramError):
        Diagram(LINE, [], [(1, "left", 0)])
    with pytest.raises(DiagramError):
        Diagram(LINE, [], [(1, "right", 2)])


def test_fountain_canonical_form():
    # An explicit arc next to the tail is absorbed; a generated one is dropped.
    a = Diagram(LINE, [(-2, 1), (-1, 1)], [(1, "left", -3)])
    b = Diagram(LINE, [], [(1, "left", -1)])
    assert a == b
    assert a.fountains == {Fountain(1, "left", -1)}


def test_both_sided_fountain_splits():
    d = Diagram(LINE, [], [(0, "both", -3)])
    assert d.fountains == {Fountain(0, "left", -3), Fountain(0, "right", 3)}


# -- crossing


def test_crossing_examples():
    assert crosses(OCT, (2, 7), (3, 8))
    assert not crosses(OCT, (2, 7), (2, 8))
    assert crosses(LINE, (1, 3), (2, 4))
    assert not crosses(OCT, (1, 2), (1, 5))


@pytest.mark.parametrize("m", range(4, 11))
def test_crossing_matches_geometry(m):
    model = Model.finite(m)
    ds = oracles.diagonals(m)
    for x, y in itertools.product(ds, repeat=2):
        assert crosses(model, Arc(*x), Arc(*y)) == oracles.geo_cross(x, y, m)


def test_line_crossing_matches_geometry():
    model = Model.infinite(-6, 6)
    arcs = list(model.arcs_within(-6, 6))
    for x, y in itertools.product(arcs, repeat=2):
        assert crosses(model, x, y) == oracles.line_cross(x, y)


@given(st.integers(4, 12), st.data())
def test_crossing_symmetric_and_shift_equivariant(m, data):
    model = Model.finite(m)
    ds = model.diagonals()
    x = data.draw(st.sampled_from(ds))
    y = data.draw(st.sampled_from(ds))
    k = data.draw(st.integers(-2 * m, 2 * m))
    assert crosses(model, x, y) == crosses(model, y, x)
    assert crosses(model, x, y) == crosses(model, shift(model, x, k), shift(model, y, k))


@given(st.integers(-8, 4), st.integers(2, 5), st.integers(-8, 4), st.integers(2, 5), st.integers(-3, 3))
def test_line_crossing_shift_equivariant(a, da, c, dc, k):
    model = Model.infinite(-20, 20)
    x, y = Arc(a, a + da), Arc(c, c + dc)
    assert crosses(model, x, y) == crosses(model, y, x)
    assert crosses(model, x, y) == crosses(model, shift(model, x, k), shift(model, y, k))


# -- shift


def test_shift_examples():
    assert shift(LINE, (1, 3), 1) == Arc(0, 2)
    assert shift(OCT, (1, 5), 1) == Arc(4, 8)
    assert shift(OCT, shift(OCT, (2, 7), 3), -3) == Arc(2, 7)


def test_shift_overflow():
    with pytest.raises(WindowOverflow):
        shift(LINE, (-12, -9), 1)


@pytest.mark.parametrize("m", range(4, 11))
def test_shift_is_a_rotation_of_order_m(m):
    model = Model.finite(m)
    ds = set(model.diagonals())
    image = {shift(model, x, 1) for x in ds}
    assert image == ds
    for x in ds:
        assert shift(model, x, m) == x
        assert shift(model, x, 1) == oracles.rot(x, 1, m)
    for v in range(1, m + 1):
        edge = model.arc(v, v % m + 1)
        assert model.is_edge(shift(model, edge, 1))


# -- Hom and Ext


def test_ext_examples():
    assert ext1_dim(OCT, (2, 7), (3, 8)) == 1
    assert ext1_dim(OCT, (2, 7), (2, 8)) == 0
    assert all(ext1_dim(OCT, (1, 2), y) == 0 for y in OCT.diagonals())


def test_hom_examples():
    assert hom_dim(LINE, (3, 6), (1, 3)) == 1
    assert hom_dim(LINE, (1, 3), (4, 6)) == 0


@pytest.mark.parametrize("m", range(4, 11))
def test_hom_matches_oracle_and_identity(m):
    model = Model.finite(m)
    for x, y in itertools.product(oracles.diagonals(m), repeat=2):
        assert hom_dim(model, Arc(*x), Arc(*y)) == oracles.hom(x, y, m)
    for x in model.diagonals():
        assert hom_dim(model, x, x) == 1


def test_line_hom_matches_oracle():
    model = Model.infinite(-10, 10)
    arcs = list(model.arcs_within(-8, 8))
    for x, y in itertools.product(arcs, repeat=2):
        assert hom_dim(model, x, y) == oracles.hom_line(x, y)


# -- exchange triangles


def test_exchange_triangles_on_the_line():
    t1, t2 = exchange_triangles(LINE, (1, 4), (2, 6))
    assert (t1.first, t1.middle, t1.last) == (Arc(1, 4), (Arc(1, 6), Arc(2, 4)), Arc(2, 6))
    assert (t2.first, t2.middle, t2.last) == (Arc(2, 6), (Arc(4, 6),), Arc(1, 4))


def test_exchange_triangle_with_edge_middle():
    t1, t2 = exchange_triangles(OCT, (2, 7), (3, 8))
    # {2,3} and {7,8} are edges, so one middle term vanishes entirely.
    assert t2.middle == ()
    assert set(t1.middle) == {Arc(2, 8), Arc(3, 7)}


def test_exchange_needs_a_crossing():
    with pytest.raises(ArcError):
        exchange_triangles(OCT, (2, 7), (2, 8))


@pytest.mark.parametrize("m", range(4, 10))
def test_exchange_triangle_invariants(m):
    model = Model.finite(m)
    for x, y in itertools.combinations(model.diagonals(), 2):
        if not crosses(model, x, y):
            continue
        t1, t2 = exchange_triangles(model, x, y)
        assert (t1.first, t1.last) == (t2.last, t2.first)
        for t in (t1, t2):
            assert len(t.middle) <= 2
            for z in t.middle:
                assert not model.is_edge(z)
                assert not crosses(model, z, t.first) and not crosses(model, z, t.last)


# -- materialize and shifted diagrams


def test_materialize_examples():
    d = fountain_example()
    expected = {(1, 3), (1, 4), (2, 4), (1, 5), (-1, 1), (-2, 1), (-3, 1)}
    assert set(materialize(d, (-3, 6))) == expected
    assert list(materialize(d, (-3, 6))) == sorted(expected)
    assert materialize(d, (2, 6)) == (Arc(2, 4),)
    plain = Diagram(LINE, [(1, 3), (2, 5)])
    assert materialize(plain, (-12, 12)) == (Arc(1, 3), Arc(2, 5))


def test_materialize_window_outside():
    with pytest.raises(WindowOverflow):
        materialize(fountain_example(), (-20, 0))


def test_shift_diagram_moves_fountains():
    d = shift_diagram(fountain_example(), 1)
    assert Fountain(0, "left", -2) in d.fountains
    assert Arc(0, 2) in d
    assert shift_diagram(d, -1) == fountain_example()


def test_containment_is_exact_for_tails():
    d = fountain_example()
    assert Diagram(LINE, [], [(1, "left", -5)]) <= d
    assert not Diagram(LINE, [], [(1, "right", 3)]) <= d
    assert (-500, 1) in d
