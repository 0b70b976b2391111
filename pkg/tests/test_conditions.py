"""Regime hypothesis checks and the multiplicity machinery."""

from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from accumgraph.conditions import (
    Regime,
    check_regime,
    empty_slice_set,
    extended_multiplicity_set,
    is_countable,
    is_meager,
    multiplicity_sets,
)
from accumgraph.demos import demo_set, sect6_pole_points
from accumgraph.geometry import Box, Hyper, PLine, Point, TargetSet
from accumgraph.intervals import Span, XSet


# ---------------------------------------------------------------------------
# Empty-slice set
# ---------------------------------------------------------------------------


def test_empty_slice_set_full_square():
    assert empty_slice_set(demo_set("square")).is_empty


def test_empty_slice_set_hyperbola():
    assert empty_slice_set(demo_set("hyperbola")) == XSet.point(0)


def test_empty_slice_set_short_box():
    c = empty_slice_set(TargetSet((Box(0, F(1, 4), 0, 0),)))
    assert c == XSet.interval(F(1, 4), 1, lo_open=True)
    ok, witness = is_countable(c)
    assert not ok
    assert witness == Span(F(1, 4), F(1), lo_open=True)


def test_empty_slice_set_sect6():
    depth = 4
    c = empty_slice_set(demo_set("sect6", depth))
    assert c == XSet.points(sect6_pole_points(depth))


# ---------------------------------------------------------------------------
# Multiplicity sets
# ---------------------------------------------------------------------------


def test_multiplicity_full_square():
    data = multiplicity_sets(demo_set("square"), n_max=2)
    assert data.D == XSet.full()
    assert data.D_n[0] == XSet.full()
    assert not data.residual


def test_multiplicity_single_pline():
    t = TargetSet((PLine(((F(0), F(0)), (F(1, 2), F(1)), (F(1), F(0)))),))
    data = multiplicity_sets(t, n_max=4)
    assert data.D.is_empty
    assert all(dn.is_empty for dn in data.D_n)


def test_multiplicity_box_and_point():
    t = TargetSet((Box(0, 1, 0, 0), Point(F(1, 2), 1)))
    data = multiplicity_sets(t, n_max=2)
    assert data.D == XSet.point(F(1, 2))
    assert data.D_n[0] == XSet.point(F(1, 2))


def oracle_multiplicity_points(target, denominator=240):
    """Brute-force scan: x values with more than one distinct slice point."""
    out = []
    for i in range(denominator + 1):
        x = F(i, denominator)
        if target.slice_at(x).is_multivalued():
            out.append(x)
    return out


def test_multiplicity_matches_brute_force_scan():
    t = TargetSet((
        Box(0, 1, 0, 0),
        Point(F(1, 2), 1),
        PLine(((F(1, 4), F(0)), (F(3, 4), F(2)))),
        Hyper(F(0), F(1, 8), F(7, 8), F(1)),
    ))
    d = multiplicity_sets(t, n_max=1).D
    for x in (F(i, 240) for i in range(241)):
        expected = t.slice_at(x).is_multivalued()
        # D may keep finitely many irrational coincidence points; rational
        # probes see the exact set.
        assert d.contains(x) == expected, f"x={x}"


def test_diameter_levels_nested_and_below_d():
    t = TargetSet((
        Box(0, 1, 0, 0),
        PLine(((F(0), F(0)), (F(1), F(2)))),
    ))
    data = multiplicity_sets(t, n_max=8)
    for prev, cur in zip(data.D_n, data.D_n[1:]):
        assert prev.is_subset_of(cur)
    for dn in data.D_n:
        assert dn.is_subset_of(data.D)
    # diam(x) = 2x here, so D_n = {x : 2x >= 1/n} = [1/(2n), 1].
    for n in (1, 2, 4, 8):
        assert data.D_n[n - 1] == XSet.closed(F(1, 2 * n), 1)
    assert data.D == XSet.interval(0, 1, lo_open=True)


def test_diameter_levels_irrational_boundary_inner():
    # Line y = x against the branch 3/(x - 2): the diameter threshold
    # equations have irrational roots, so the level sets are inner dyadic
    # approximations; every reported point must truly satisfy diam >= 1/n.
    t = TargetSet((
        PLine(((F(0), F(0)), (F(1), F(1)))),
        Hyper(F(2), F(0), F(1), F(3)),
    ))
    data = multiplicity_sets(t, n_max=4)
    for n in (1, 2, 3, 4):
        dn = data.D_n[n - 1]
        for span in dn.spans:
            for probe in {span.lo, span.hi, (span.lo + span.hi) / 2}:
                if dn.contains(probe):
                    assert t.slice_at(probe).diameter() >= F(1, n)
        assert dn.is_subset_of(data.D)


def test_residual_flag_for_vanishing_diameters():
    # Two lines meeting at 0: the diameter is positive but arbitrarily
    # small near the crossing, so the level sets never exhaust D.
    t = TargetSet((
        PLine(((F(0), F(0)), (F(1), F(0)))),
        PLine(((F(0), F(0)), (F(1), F(1)))),
    ))
    data = multiplicity_sets(t, n_max=8)
    assert data.D == XSet.interval(0, 1, lo_open=True)
    assert data.D_n[7] == XSet.closed(F(1, 8), 1)
    assert data.residual


def test_extended_multiplicity_hyper_plus_point():
    t = TargetSet((Hyper(0, 0, 1, 1), Point(0, 0)))
    assert extended_multiplicity_set(t) == XSet.point(0)


def test_extended_multiplicity_hyper_alone():
    assert extended_multiplicity_set(demo_set("hyperbola")).is_empty


def test_extended_multiplicity_sect6_empty():
    t = demo_set("sect6", 5)
    ext = extended_multiplicity_set(t)
    assert ext.is_empty
    # Brute-force confirmation at all pole points and gap midpoints.
    for x in sect6_pole_points(5):
        assert not t.extended_slice_at(x).count_exceeds_one()


def test_extended_multiplicity_two_sided_pole():
    # Two arcs diverging in opposite directions above the same x.
    t = TargetSet((
        Hyper(F(1, 2), F(1, 4), F(1, 2), F(1)),
        Hyper(F(1, 2), F(1, 2), F(3, 4), F(1)),
    ))
    ext = t.extended_slice_at(F(1, 2))
    assert ext.plus_inf and ext.minus_inf
    assert extended_multiplicity_set(t).contains(F(1, 2))


# ---------------------------------------------------------------------------
# Meagerness
# ---------------------------------------------------------------------------


def test_is_meager_cases():
    assert is_meager(XSet.empty())[0]
    assert is_meager(XSet.points([F(1, 2), F(1, 3)]))[0]
    ok, witness = is_meager(XSet.closed(F(1, 4), F(1, 2)))
    assert not ok
    assert witness == Span(F(1, 4), F(1, 2))


def test_meager_d_iff_all_levels_meager():
    for t in (
        demo_set("square"),
        TargetSet((Box(0, 1, 0, 0), Point(F(1, 2), 1))),
        TargetSet((PLine(((F(0), F(0)), (F(1), F(1)))), Box(0, F(1, 2), 0, 0))),
    ):
        data = multiplicity_sets(t, n_max=16)
        d_meager = is_meager(data.D)[0]
        levels_meager = all(is_meager(dn)[0] for dn in data.D_n)
        assert d_meager == levels_meager


# ---------------------------------------------------------------------------
# Regime verdicts
# ---------------------------------------------------------------------------


def test_square_verdicts():
    sq = demo_set("square")
    assert check_regime(sq, Regime.B2_BOUNDED).passed
    assert check_regime(sq, Regime.B2).passed
    v = check_regime(sq, Regime.B1_BOUNDED)
    assert not v.passed
    failing = [c for c in v.checks if not c.passed]
    assert len(failing) == 1
    assert failing[0].name == "multiplicity_meager"
    assert failing[0].witness == Span(F(0), F(1))
    assert not check_regime(sq, Regime.B1).passed


def test_hyperbola_verdicts():
    h = demo_set("hyperbola")
    for regime in (Regime.B2_BOUNDED, Regime.B1_BOUNDED):
        v = check_regime(h, regime)
        assert not v.passed
        compact = [c for c in v.checks if c.name == "compact"][0]
        assert not compact.passed
    assert check_regime(h, Regime.B2).passed
    assert check_regime(h, Regime.B1).passed


def test_sect6_verdicts():
    t = demo_set("sect6", 3)
    assert check_regime(t, Regime.B2).passed
    assert check_regime(t, Regime.B1).passed


def test_constant_verdicts():
    t = demo_set("constant")
    for regime in Regime:
        assert check_regime(t, regime).passed


def test_verdict_report_lines():
    lines = check_regime(demo_set("square"), Regime.B1_BOUNDED).report_lines()
    assert lines[-1] == "REGIME b1-bounded FAIL"
    assert any(line.startswith("CHECK multiplicity_meager FAIL witness=") for line in lines)


def test_closed_check_always_reported():
    for regime in Regime:
        v = check_regime(demo_set("constant"), regime)
        assert v.checks[0].name == "closed" and v.checks[0].passed


# ---------------------------------------------------------------------------
# Structural properties on random piece sets
# ---------------------------------------------------------------------------

small_rat = st.builds(F, st.integers(0, 12), st.just(12))


@st.composite
def random_target(draw):
    pieces = []
    for _ in range(draw(st.integers(1, 4))):
        kind = draw(st.sampled_from(["point", "box", "pline", "hyper"]))
        if kind == "point":
            pieces.append(Point(draw(small_rat), draw(st.integers(-3, 3))))
        elif kind == "box":
            a, b = sorted([draw(small_rat), draw(small_rat)])
            y0, y1 = sorted([draw(st.integers(-3, 3)), draw(st.integers(-3, 3))])
            pieces.append(Box(a, b, y0, y1))
        elif kind == "pline":
            xs = sorted(draw(st.sets(small_rat, min_size=2, max_size=3)))
            pieces.append(PLine(tuple((x, F(draw(st.integers(-3, 3)))) for x in xs)))
        else:
            a, b = sorted([draw(small_rat), draw(small_rat)])
            if a == b:
                a, b = (a, a + F(1, 12)) if a < 1 else (a - F(1, 12), a)
            side = draw(st.sampled_from(["left", "right", "out"]))
            coef = F(draw(st.sampled_from([-1, 1, 2])))
            if side == "left":
                pieces.append(Hyper(a, a, b, coef))
            elif side == "right":
                pieces.append(Hyper(b, a, b, coef))
            else:
                p = a - F(1, 6) if a >= F(1, 6) else b + F(1, 6)
                pieces.append(Hyper(p, a, b, coef))
    return TargetSet(tuple(pieces))


@settings(max_examples=60, deadline=None)
@given(random_target())
def test_projection_partition(t):
    assert empty_slice_set(t) | t.x_projection() == XSet.full()
    assert (empty_slice_set(t) & t.x_projection()).is_empty


@settings(max_examples=40, deadline=None)
@given(random_target())
def test_regime_monotonicity(t):
    if check_regime(t, Regime.B1_BOUNDED).passed:
        assert check_regime(t, Regime.B2_BOUNDED).passed
    if check_regime(t, Regime.B1).passed:
        assert check_regime(t, Regime.B2).passed
    if check_regime(t, Regime.B2_BOUNDED).passed:
        assert check_regime(t, Regime.B2).passed


@settings(max_examples=30, deadline=None)
@given(random_target())
def test_diameter_levels_structure(t):
    data = multiplicity_sets(t, n_max=6)
    for prev, cur in zip(data.D_n, data.D_n[1:]):
        assert prev.is_subset_of(cur)
    for dn in data.D_n:
        assert dn.is_subset_of(data.D)
