"""Piece geometry: slicing, projection, clipping, distance.

The oracles here re-derive membership and distance directly from the piece
parameters in plain float arithmetic, independently of the library's exact
code paths.
"""

import math
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from accumgraph.demos import demo_set, sect6_pole_points
from accumgraph.geometry import Box, Hyper, PLine, Point, TargetSet
from accumgraph.intervals import XSet


# ---------------------------------------------------------------------------
# Brute-force oracles (float, straight from the definitions)
# ---------------------------------------------------------------------------


def oracle_slice_values(target, x, grid=2001, tol=1e-9):
    """Membership-based slice probe: per-piece y values straight from the
    defining formulas."""
    x = float(x)
    values = []
    for piece in target.pieces:
        if isinstance(piece, Point):
            if abs(float(piece.x) - x) < tol:
                values.append(float(piece.y))
        elif isinstance(piece, Box):
            if float(piece.x0) - tol <= x <= float(piece.x1) + tol:
                values.append((float(piece.y0), float(piece.y1)))
        elif isinstance(piece, PLine):
            for (xa, ya), (xb, yb) in piece.segments():
                fa, fb = float(xa), float(xb)
                if fa - tol <= x <= fb + tol:
                    t = 0.0 if fb == fa else (x - fa) / (fb - fa)
                    values.append(float(ya) + t * (float(yb) - float(ya)))
        else:
            p = float(piece.pole)
            lo, hi = float(piece.x0), float(piece.x1)
            inside = lo <= x <= hi
            if piece.pole == piece.x0:
                inside = lo < x <= hi
            elif piece.pole == piece.x1:
                inside = lo <= x < hi
            if inside and x != p:
                values.append(float(piece.coef) / (x - p))
    return values


def oracle_projection_member(target, x):
    return bool(oracle_slice_values(target, x))


def oracle_arc_points(arc, samples=200000):
    """Dense float sampling of a hyperbola arc for distance oracles."""
    p, c = float(arc.pole), float(arc.coef)
    lo, hi = float(arc.x0), float(arc.x1)
    eps = (hi - lo) * 1e-9
    if arc.pole == arc.x0:
        lo += eps
    elif arc.pole == arc.x1:
        hi -= eps
    pts = []
    for i in range(samples + 1):
        x = lo + (hi - lo) * i / samples
        pts.append((x, c / (x - p)))
    return pts


# ---------------------------------------------------------------------------
# Slicing
# ---------------------------------------------------------------------------


def test_box_slice():
    t = TargetSet((Box(0, 1, -1, 2),))
    assert t.slice_at(F(1, 2)).intervals == ((F(-1), F(2)),)


def test_hyper_slice():
    t = TargetSet((Hyper(0, 0, 1, 1),))
    assert t.slice_at(F(1, 2)).intervals == ((F(2), F(2)),)
    assert t.slice_at(0).is_empty


def test_sect6_slice_midpoint():
    # Distance from 5/12 to the pole set is 1/12, so the value is -12.
    t = demo_set("sect6", 3)
    assert t.slice_at(F(5, 12)).intervals == ((F(-12), F(-12)),)


def test_pline_slice_interpolates():
    t = TargetSet((PLine(((F(0), F(0)), (F(1, 2), F(1)), (F(1), F(0)))),))
    assert t.slice_at(F(1, 4)).intervals == ((F(1, 2), F(1, 2)),)
    assert t.slice_at(F(3, 4)).intervals == ((F(1, 2), F(1, 2)),)


def test_slice_union_is_merged():
    t = TargetSet((Box(0, 1, 0, 1), Box(0, 1, F(1, 2), 2), Point(F(1, 2), 5)))
    assert t.slice_at(F(1, 2)).intervals == ((F(0), F(2)), (F(5), F(5)))


def test_slice_monotone_under_union():
    t1 = TargetSet((Box(0, 1, 0, 1),))
    t2 = TargetSet((Point(F(1, 2), 3),))
    both = TargetSet(t1.pieces + t2.pieces)
    x = F(1, 2)
    assert both.slice_at(x) == t1.slice_at(x) | t2.slice_at(x)


# ---------------------------------------------------------------------------
# Extended slices
# ---------------------------------------------------------------------------


def test_hyper_extended_slice_at_pole():
    t = TargetSet((Hyper(0, 0, 1, 1),))
    ext = t.extended_slice_at(0)
    assert ext.plus_inf and not ext.minus_inf and ext.finite.is_empty


def test_sect6_extended_slice_at_interior_pole():
    t = demo_set("sect6", 4)
    ext = t.extended_slice_at(F(1, 2))
    assert ext.minus_inf and not ext.plus_inf and ext.finite.is_empty


def test_box_extended_slice_no_infinities():
    t = TargetSet((Box(0, 1, 0, 1),))
    ext = t.extended_slice_at(F(1, 3))
    assert not ext.plus_inf and not ext.minus_inf
    assert ext.finite.intervals == ((F(0), F(1)),)


def test_extended_slice_counts():
    t = TargetSet((Hyper(0, 0, 1, 1), Point(0, 0)))
    assert t.extended_slice_at(0).count_exceeds_one()
    assert not TargetSet((Hyper(0, 0, 1, 1),)).extended_slice_at(0).count_exceeds_one()


def test_extended_contains_plain_slice():
    t = demo_set("sect6", 3)
    for x in (F(1, 4), F(5, 12), F(2, 3)):
        ext = t.extended_slice_at(x)
        for a, b in t.slice_at(x):
            assert ext.finite.contains(a) and ext.finite.contains(b)


# ---------------------------------------------------------------------------
# Projection
# ---------------------------------------------------------------------------


def test_point_projection():
    t = TargetSet((Point(F(1, 2), 3),))
    assert t.x_projection() == XSet.point(F(1, 2))


def test_hyper_projection_half_open():
    t = TargetSet((Hyper(0, 0, 1, 1),))
    assert t.x_projection() == XSet.interval(0, 1, lo_open=True)


def test_sect6_projection_matches_brute_force():
    t = demo_set("sect6", 5)
    proj = t.x_projection()
    poles = set(sect6_pole_points(5))
    for i in range(0, 1001):
        x = F(i, 1000)
        expected = (x not in poles) if F(0) <= x <= F(1) else False
        assert proj.contains(x) == expected, f"x={x}"
    for x in sect6_pole_points(5):
        assert not proj.contains(x)


def test_projection_agrees_with_slice_nonempty():
    t = TargetSet((
        Box(F(1, 8), F(1, 4), 0, 1),
        Hyper(F(1, 2), F(1, 2), F(3, 4), -1),
        Point(F(7, 8), 5),
        PLine(((F(1, 4), F(0)), (F(3, 8), F(2)))),
    ))
    proj = t.x_projection()
    for i in range(0, 129):
        x = F(i, 128)
        assert proj.contains(x) == (not t.slice_at(x).is_empty), f"x={x}"


# ---------------------------------------------------------------------------
# Band clipping
# ---------------------------------------------------------------------------


@pytest.mark.parametrize("piece", [
    Box(F(1, 8), F(3, 4), F(-3), F(2)),
    PLine(((F(0), F(-5)), (F(1, 2), F(5)), (F(1), F(-1)))),
    Hyper(F(0), F(0), F(1), F(1)),
    Hyper(F(1), F(1, 4), F(1), F(-2)),
    Hyper(F(1, 8), F(1, 4), F(3, 4), F(3)),
    Hyper(F(7, 8), F(1, 8), F(1, 2), F(-1)),
    Point(F(1, 2), F(3, 2)),
])
@pytest.mark.parametrize("band", [
    (F(-2), F(2)), (F(1), F(4)), (F(-10), F(-4)), (None, F(0)), (F(1, 2), None),
])
def test_clip_matches_membership(piece, band):
    t = TargetSet((piece,))
    ylo, yhi = band
    clipped = t.clipped(ylo, yhi)
    for i in range(0, 257):
        x = F(i, 256)
        vals = t.slice_at(x)
        expected = [
            (a, b)
            for a, b in (
                (max(a, ylo) if ylo is not None else a,
                 min(b, yhi) if yhi is not None else b)
                for a, b in vals
            )
            if a <= b
        ]
        got = clipped.slice_at(x)
        assert got.intervals == tuple(expected), f"x={x} band={band}"


def test_clip_preserves_excluded_pole():
    t = TargetSet((Hyper(0, 0, 1, 1),))
    half = t.clipped(None, F(10))
    # The pole side is cut off at y = 10, i.e. x = 1/10.
    assert half.x_projection() == XSet.closed(F(1, 10), 1)
    unbounded_side = t.clipped(F(1), None)
    assert unbounded_side.x_projection() == XSet.interval(0, 1, lo_open=True)


def test_is_bounded():
    assert TargetSet((Box(0, 1, 0, 1),)).is_bounded()
    assert not demo_set("hyperbola").is_bounded()
    assert TargetSet((Hyper(F(1, 2), F(5, 8), F(7, 8), 1),)).is_bounded()


def test_y_extent():
    t = TargetSet((Box(0, 1, -2, 1), Point(F(1, 2), 4),
                   Hyper(F(0), F(1, 4), F(1, 2), F(1))))
    assert t.y_extent() == (F(-2), F(4))


# ---------------------------------------------------------------------------
# Distances
# ---------------------------------------------------------------------------


def test_distance_point_trivial():
    t = TargetSet((Point(0, 0),))
    assert t.distance_to((0, 0)) == 0.0
    assert t.distance_to((F(3, 4), 1)) == pytest.approx(1.25)


def test_distance_box_trivial():
    t = TargetSet((Box(0, 1, 0, F(1, 2)),))
    assert t.distance_to((0, 1)) == pytest.approx(0.5)
    assert t.distance_to((F(1, 2), F(1, 4))) == 0.0


def test_distance_segment_exact_zero():
    t = TargetSet((PLine(((F(0), F(0)), (F(1), F(1)))),))
    assert t.distance_to((F(1, 3), F(1, 3))) == 0.0
    assert t.distance_to((0, 1)) == pytest.approx(math.sqrt(2) / 2)


def test_distance_arc_exact_zero_on_curve():
    t = TargetSet((Hyper(0, 0, 1, 1),))
    assert t.distance_to((F(1, 2), 2)) == 0.0
    assert t.distance_to((F(1, 4), 4)) == 0.0


def test_distance_sect6_against_dense_sampling():
    t = demo_set("sect6", 3)
    p = (F(1, 2), F(-13))
    oracle = math.inf
    for piece in t.pieces:
        for x, y in oracle_arc_points(piece, samples=400000):
            oracle = min(oracle, math.hypot(x - 0.5, y + 13.0))
    got = t.distance_to(p)
    assert got == pytest.approx(oracle, abs=1e-6)
    # Sanity: no farther than the slice point at (5/12, -12).
    assert got <= math.hypot(1 / 12, 1.0)


def test_distance_arc_against_dense_sampling_various_targets():
    arc = Hyper(F(1), F(1, 8), F(1), F(-3))
    t = TargetSet((arc,))
    dense = oracle_arc_points(arc, samples=400000)
    for p in [(F(0), F(0)), (F(1, 2), F(-5)), (F(9, 10), F(2)), (F(1), F(-40))]:
        oracle = min(math.hypot(x - float(p[0]), y - float(p[1])) for x, y in dense)
        assert t.distance_to(p) == pytest.approx(oracle, abs=1e-6)


def test_distance_zero_iff_membership_rational():
    t = TargetSet((
        Point(F(1, 4), F(1, 3)),
        Box(F(1, 2), F(3, 4), 0, 1),
        PLine(((F(0), F(0)), (F(1, 8), F(1)))),
    ))
    on_points = [(F(1, 4), F(1, 3)), (F(5, 8), F(1, 2)), (F(1, 16), F(1, 2))]
    off_points = [(F(1, 4), F(1, 2)), (F(5, 8), F(3, 2)), (F(1, 16), F(0))]
    for p in on_points:
        assert t.contains_point(p)
        assert t.distance_to(p) == 0.0
    for p in off_points:
        assert not t.contains_point(p)
        assert t.distance_to(p) > 0.0


# ---------------------------------------------------------------------------
# Validation
# ---------------------------------------------------------------------------


def test_piece_validation():
    with pytest.raises(ValueError):
        Point(F(3, 2), 0)
    with pytest.raises(ValueError):
        Box(F(1, 2), F(1, 4), 0, 1)
    with pytest.raises(ValueError):
        Box(0, 1, 1, 0)
    with pytest.raises(ValueError):
        PLine(((F(0), F(0)),))
    with pytest.raises(ValueError):
        PLine(((F(1, 2), F(0)), (F(1, 4), F(1))))
    with pytest.raises(ValueError):
        Hyper(F(1, 2), 0, 1, 1)  # pole strictly inside
    with pytest.raises(ValueError):
        Hyper(0, 0, 1, 0)  # zero coefficient
    with pytest.raises(ValueError):
        TargetSet((Box(0, 1, 0, 1),)).slice_at(F(3, 2))


# ---------------------------------------------------------------------------
# Randomized slice-vs-oracle comparison
# ---------------------------------------------------------------------------

small_rat = st.builds(F, st.integers(0, 16), st.just(16))


@st.composite
def random_pieces(draw):
    kind = draw(st.sampled_from(["point", "box", "pline", "hyper"]))
    if kind == "point":
        return Point(draw(small_rat), draw(st.integers(-4, 4)))
    if kind == "box":
        a, b = sorted([draw(small_rat), draw(small_rat)])
        y0, y1 = sorted([draw(st.integers(-4, 4)), draw(st.integers(-4, 4))])
        return Box(a, b, y0, y1)
    if kind == "pline":
        xs = sorted(draw(st.sets(small_rat, min_size=2, max_size=4)))
        ys = [draw(st.integers(-4, 4)) for _ in xs]
        return PLine(tuple(zip(xs, [F(y) for y in ys])))
    a, b = sorted([draw(small_rat), draw(small_rat)])
    if a == b:
        b = a + F(1, 16) if a < 1 else None
        if b is None:
            a, b = F(15, 16), F(1)
    pole = draw(st.sampled_from(["left", "right", "outside"]))
    coef = F(draw(st.sampled_from([-2, -1, 1, 2])))
    if pole == "left":
        return Hyper(a, a, b, coef)
    if pole == "right":
        return Hyper(b, a, b, coef)
    p = a - F(1, 8) if a >= F(1, 8) else b + F(1, 8)
    return Hyper(p, a, b, coef)


@settings(max_examples=60, deadline=None)
@given(st.lists(random_pieces(), min_size=1, max_size=4), small_rat)
def test_slice_matches_oracle(pieces, x):
    t = TargetSet(tuple(pieces))
    got = t.slice_at(x)

    def dist_to_slice(v: float) -> float:
        if got.is_empty:
            return math.inf
        return min(
            max(float(a) - v, 0.0, v - float(b)) for a, b in got.intervals
        )

    for v in oracle_slice_values(t, x, tol=0.0):
        if isinstance(v, tuple):
            assert dist_to_slice(v[0]) < 1e-9
            assert dist_to_slice(v[1]) < 1e-9
            assert dist_to_slice((v[0] + v[1]) / 2) < 1e-9
        else:
            assert dist_to_slice(v) < 1e-9
    assert t.x_projection().contains(x) == (not got.is_empty)
