"""Witness-function synthesis.

Given a target set that passes a regime's checks, build the function whose
graph accumulates exactly on the target:

* a countable approximation net: for each level n, a finite set H_n of
  points within 1/n of T_n = T intersected with the band |y| <= n, whose
  1/n-balls cover T_n, with all x coordinates pairwise distinct across
  levels and avoiding a prescribed interval-free set;
* level sets U_n = {x : the slice meets [-n, n]}, their differences V_n and
  an enumeration W of closed parts of the V_n (unbounded regimes);
* a backbone: max of the slice (bounded regimes) or the largest slice value
  whose magnitude does not exceed the minimal admissible level n_x
  (unbounded regimes);
* values on the empty-slice set C: |f(c_k)| = k, signed toward the
  divergence direction of the extended closure when requested.

Net sampling uses nested dyadic subdivision anchored on each piece, so a
sample site of level n is revisited by every deeper level. This is the
finite analogue of the defining property of the net (arbitrarily deep
levels place points near every target point) and is what lets a
cluster-based estimator recover two-dimensional and curved regions of the
target from a truncated graph.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, Iterable, List, Optional, Sequence, Tuple

from .conditions import (
    Regime,
    Verdict,
    check_regime,
    empty_slice_set,
    extended_multiplicity_set,
    multiplicity_sets,
)
from .geometry import (
    Box,
    EmptySliceError,
    Hyper,
    Piece,
    PLine,
    Point,
    TargetSet,
)
from .intervals import ONE, ZERO, RatLike, Span, XSet, rat


class RegimeUnsatisfiedError(Exception):
    """Synthesis requested for a target that fails the regime checks."""

    def __init__(self, verdict: Verdict):
        self.verdict = verdict
        failed = [c.name for c in verdict.checks if not c.passed]
        super().__init__(
            f"target does not satisfy regime {verdict.regime.value}: "
            f"failed checks {failed}"
        )


class NetPlacementError(Exception):
    """Internal failure to place a net point off the avoid set."""


# ---------------------------------------------------------------------------
# Countable approximation net
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class NetLevel:
    n: int
    points: Tuple[Tuple[Fraction, Fraction], ...]
    xs: Tuple[Fraction, ...]


@dataclass(frozen=True)
class CountableApprox:
    levels: Tuple[NetLevel, ...]
    depth: int

    @property
    def a_enumeration(self) -> List[Fraction]:
        """All net x coordinates in construction order: a_1, a_2, ..."""
        out: List[Fraction] = []
        for level in self.levels:
            out.extend(level.xs)
        return out

    def a_values(self) -> Dict[Fraction, Fraction]:
        out: Dict[Fraction, Fraction] = {}
        for level in self.levels:
            for x, y in level.points:
                out[x] = y
        return out

    def level_sizes(self) -> List[int]:
        return [len(level.points) for level in self.levels]


def _dyadic_pitch_at_most(bound: Fraction) -> Fraction:
    """Largest power of two (including 2^0) not exceeding bound."""
    pitch = ONE
    while pitch > bound:
        pitch /= 2
    return pitch


def _curve_spacing(n: int) -> Fraction:
    # s/2 of along-curve gap plus the placement displacement cap 1/(16n)
    # must stay within 1/n, so s <= 15/(8n).
    return _dyadic_pitch_at_most(Fraction(15, 8 * n))

_SQRT2_OVER_2_UPPER = Fraction(70711, 100000)  # > sqrt(2)/2


def _grid_pitch(n: int) -> Fraction:
    # Cell radius pitch*sqrt(2)/2 plus displacement 1/(16n) within 1/n.
    bound = Fraction(15, 16 * n) / _SQRT2_OVER_2_UPPER
    return _dyadic_pitch_at_most(bound)


def _dyadic_nodes(lo: Fraction, hi: Fraction, pitch: Fraction) -> List[Fraction]:
    """Dyadic subdivision nodes of [lo, hi] with step <= pitch.

    The subdivision count is a power of two, so node sets nest as the pitch
    shrinks across levels.
    """
    if lo == hi:
        return [lo]
    width = hi - lo
    m = 1
    while width / m > pitch:
        m *= 2
    return [lo + width * Fraction(i, m) for i in range(m + 1)]


_Slider = Optional[Callable[[Fraction], Optional[Fraction]]]
_RawSample = Tuple[Fraction, Fraction, _Slider]


def _sample_point(piece: Point, n: int) -> List[_RawSample]:
    if abs(piece.y) <= n:
        return [(piece.x, piece.y, None)]
    return []


def _sample_box(piece: Box, n: int) -> List[_RawSample]:
    pitch = _grid_pitch(n)
    xs = _dyadic_nodes(piece.x0, piece.x1, pitch)
    ys = _dyadic_nodes(piece.y0, piece.y1, pitch)
    band_lo, band_hi = Fraction(-n), Fraction(n)
    rows = [y for y in ys if band_lo <= y <= band_hi]
    # Exact band-edge rows keep the clipped region covered even though the
    # dyadic grid is anchored on the full box.
    for edge in (band_lo, band_hi):
        if piece.y0 < edge < piece.y1 and edge not in rows:
            rows.append(edge)
    rows.sort()
    out: List[_RawSample] = []
    for y in rows:
        def slider(x2: Fraction, y=y) -> Optional[Fraction]:
            return y if piece.x0 <= x2 <= piece.x1 else None

        for x in xs:
            out.append((x, y, slider))
    return out


def _sample_segment(xa: Fraction, ya: Fraction, xb: Fraction, yb: Fraction,
                    n: int) -> List[_RawSample]:
    spacing = _curve_spacing(n)
    manhattan = abs(xb - xa) + abs(yb - ya)
    m = 1
    while manhattan / m > spacing:
        m *= 2
    band_lo, band_hi = Fraction(-n), Fraction(n)
    dy = yb - ya

    def y_of(t: Fraction) -> Fraction:
        return ya + t * dy

    def slider(x2: Fraction) -> Optional[Fraction]:
        if xa <= x2 <= xb:
            return ya + (x2 - xa) * dy / (xb - xa)
        return None

    ts = [Fraction(i, m) for i in range(m + 1)]
    # Band crossings, exact.
    if dy != 0:
        for edge in (band_lo, band_hi):
            t = (edge - ya) / dy
            if ZERO < t < ONE and t not in ts:
                ts.append(t)
    ts.sort()
    out: List[_RawSample] = []
    for t in ts:
        y = y_of(t)
        if band_lo <= y <= band_hi:
            out.append((xa + t * (xb - xa), y, slider))
    return out


def _sample_arc(piece: Hyper, n: int) -> List[_RawSample]:
    spacing = _curve_spacing(n)
    band = Fraction(n)
    pole, c = piece.pole, piece.coef

    def y_at(x: Fraction) -> Fraction:
        return c / (x - pole)

    def clamped(x: Fraction) -> Fraction:
        if x == pole:
            return band if piece.divergence_sign() > 0 else -band
        return min(max(y_at(x), -band), band)

    def in_band(x: Fraction) -> bool:
        return x != pole and abs(y_at(x)) <= band

    nodes: Dict[Fraction, Fraction] = {}

    def emit(x: Fraction) -> None:
        if in_band(x):
            nodes.setdefault(x, y_at(x))

    def beyond_same_side(a: Fraction, b: Fraction) -> bool:
        ca, cb = clamped(a), clamped(b)
        return (abs(ca) == band and ca == cb
                and not in_band(a) and not in_band(b))

    def rec(a: Fraction, b: Fraction, fuel: int) -> None:
        if beyond_same_side(a, b):
            return
        if fuel == 0 or (b - a) + abs(clamped(b) - clamped(a)) <= spacing:
            emit(a)
            emit(b)
            return
        mid = (a + b) / 2
        rec(a, mid, fuel - 1)
        rec(mid, b, fuel - 1)

    rec(piece.x0, piece.x1, 64)
    # Exact band-crossing points: y = +-n at x = pole + c/(+-n).
    for edge in (band, -band):
        x_cross = pole + c / edge
        if piece.domain().contains(x_cross):
            nodes.setdefault(x_cross, y_at(x_cross))

    dom = piece.domain()

    def slider(x2: Fraction) -> Optional[Fraction]:
        if dom.contains(x2):
            return y_at(x2)
        return None

    return [(x, nodes[x], slider) for x in sorted(nodes)]


def _sample_piece(piece: Piece, n: int) -> List[_RawSample]:
    if isinstance(piece, Point):
        return _sample_point(piece, n)
    if isinstance(piece, Box):
        return _sample_box(piece, n)
    if isinstance(piece, PLine):
        out: List[_RawSample] = []
        for (xa, ya), (xb, yb) in piece.segments():
            out.extend(_sample_segment(xa, ya, xb, yb, n))
        return out
    return _sample_arc(piece, n)


class _Placer:
    """Assigns final x coordinates: pairwise distinct, off the avoid set.

    A sample prefers to stay where it is; on a collision it slides by a
    small offset, positive side first, staying on its piece when the piece
    is a graph locally. Offsets are capped both by 1/(16 n j) at global
    index j (well under the 1/(4 n j) budget) and by an absolute 2^-12, so
    collocated samples from different levels stay inside one clustering
    cell after separation.
    """

    _ABS_CAP = Fraction(1, 4096)

    def __init__(self, avoid: XSet):
        self.avoid = avoid
        self.used: set[Fraction] = set()
        self.index = 0

    def place(self, x: Fraction, y: Fraction, n: int, slider: _Slider) -> Tuple[Fraction, Fraction]:
        self.index += 1
        scale = min(Fraction(1, 16 * n * self.index), self._ABS_CAP)
        dmax_sq = min(Fraction(1, 16 * n), Fraction(1, 1024)) ** 2
        step = scale
        attempts = 0
        offset_iter = self._offsets(scale)
        for delta in offset_iter:
            attempts += 1
            if attempts > 400:
                break
            x2 = x + delta
            if not (ZERO <= x2 <= ONE):
                continue
            if x2 in self.used or self.avoid.contains(x2):
                continue
            y2 = y
            if delta != 0 and slider is not None:
                slid = slider(x2)
                if slid is not None:
                    y2 = slid
            if delta != 0:
                if (x2 - x) ** 2 + (y2 - y) ** 2 > dmax_sq:
                    continue
            self.used.add(x2)
            return x2, y2
        raise NetPlacementError(
            f"could not place a net point near x={x} off the avoid set"
        )

    @staticmethod
    def _offsets(scale: Fraction) -> Iterable[Fraction]:
        yield ZERO
        step = scale
        while True:
            yield step
            yield -step
            step /= 2


def lemma31_net(target: TargetSet, depth: int, avoid: XSet = XSet.empty()) -> CountableApprox:
    """Finite truncation of the countable approximation net.

    For each n <= depth, H_n is a finite set of points within 1/n of
    T_n = T intersected with |y| <= n whose 1/n-balls cover T_n.
    Representative points lie on the pieces wherever sliding is possible;
    all x coordinates are pairwise distinct across levels and avoid the
    given interval-free set.
    """
    if target.is_empty:
        raise ValueError("cannot build a net for an empty target set")
    if depth < 1:
        raise ValueError("net depth must be positive")
    if avoid.contains_interval():
        raise ValueError("avoid set must contain no interval")
    placer = _Placer(avoid)
    levels: List[NetLevel] = []
    for n in range(1, depth + 1):
        points: List[Tuple[Fraction, Fraction]] = []
        xs: List[Fraction] = []
        for piece in target.pieces:
            for x, y, slider in _sample_piece(piece, n):
                x2, y2 = placer.place(x, y, n, slider)
                points.append((x2, y2))
                xs.append(x2)
        levels.append(NetLevel(n, tuple(points), tuple(xs)))
    return CountableApprox(tuple(levels), depth)


# ---------------------------------------------------------------------------
# Level sets for the unbounded backbone
# ---------------------------------------------------------------------------


_W_RESOLUTION = Fraction(1, 4096)
_W_MAX_PARTS = 14


@dataclass(frozen=True)
class LevelSets:
    depth: int
    U: Tuple[XSet, ...]
    V: Tuple[XSet, ...]
    W: Tuple[Tuple[int, Span], ...]  # (level, closed part), enumeration order


def _closed_parts(span: Span) -> List[Span]:
    """Decompose one span of a V_n into nested closed parts.

    Closed spans are their own part. A half-open or open span is written as
    an increasing union of closed subintervals whose cut approaches the
    open end geometrically; the sequence is truncated once the remaining
    sliver is below a fixed resolution.
    """
    if not span.lo_open and not span.hi_open:
        return [span]
    parts: List[Span] = []
    w = span.width
    shrink = w / 2
    for _ in range(_W_MAX_PARTS):
        lo = span.lo + shrink if span.lo_open else span.lo
        hi = span.hi - shrink if span.hi_open else span.hi
        if lo <= hi:
            parts.append(Span(lo, hi))
        if shrink <= _W_RESOLUTION:
            break
        shrink /= 2
    return parts


def u_sets(target: TargetSet, depth: int) -> LevelSets:
    """Exact level sets U_n = {x : slice meets [-n, n]}, their differences
    V_n and an enumeration of closed parts of the V_n ordered by level and
    then left endpoint."""
    if depth < 1:
        raise ValueError("depth must be positive")
    u_list: List[XSet] = []
    for n in range(1, depth + 1):
        u_list.append(target.clipped(Fraction(-n), Fraction(n)).x_projection())
    v_list: List[XSet] = [u_list[0]]
    for n in range(1, depth):
        v_list.append(u_list[n] - u_list[n - 1])
    w_list: List[Tuple[int, Span]] = []
    for n, v in enumerate(v_list, start=1):
        parts: List[Span] = []
        for span in v.spans:
            parts.extend(_closed_parts(span))
        parts.sort(key=lambda s: (s.lo, s.hi))
        w_list.extend((n, part) for part in parts)
    return LevelSets(depth, tuple(u_list), tuple(v_list), tuple(w_list))


# ---------------------------------------------------------------------------
# Backbones
# ---------------------------------------------------------------------------


def f0_bounded(target: TargetSet, x: RatLike) -> Fraction:
    """Max of the slice at x; raises EmptySliceError on an empty slice."""
    values = target.slice_at(x)
    if values.is_empty:
        raise EmptySliceError(f"empty slice at x={x}")
    return values.max_value()


def level_index(target: TargetSet, x: RatLike) -> int:
    """n_x: the minimal n with a slice value of magnitude at most n.

    Computed directly as max(1, ceil(min |y| over the slice)), which agrees
    with membership in the level sets U_n without any depth truncation.
    """
    values = target.slice_at(x)
    if values.is_empty:
        raise EmptySliceError(f"empty slice at x={x}")
    m = values.min_abs()
    n = -((-m.numerator) // m.denominator)  # ceil
    return max(1, n)


def f0_unbounded(target: TargetSet, x: RatLike) -> Fraction:
    """Largest slice value whose magnitude does not exceed n_x."""
    n = level_index(target, x)
    clipped = target.slice_at(x).clipped(Fraction(-n), Fraction(n))
    return clipped.max_value()


# ---------------------------------------------------------------------------
# Values on the empty-slice set
# ---------------------------------------------------------------------------


def f_on_c(c_points: Sequence[Fraction], target: TargetSet,
           signed: bool) -> Dict[Fraction, Fraction]:
    """Assign |f(c_k)| = k along the enumeration.

    Unsigned: f(c_k) = k. Signed: the sign follows the divergence direction
    of the extended closure above c_k, positive winning when both or
    neither direction occurs.
    """
    out: Dict[Fraction, Fraction] = {}
    for k, c in enumerate(c_points, start=1):
        value = Fraction(k)
        if signed:
            ext = target.extended_slice_at(c)
            if ext.minus_inf and not ext.plus_inf:
                value = -value
        out[c] = value
    return out


# ---------------------------------------------------------------------------
# Assembly
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class SynthFunction:
    """The synthesized witness function, evaluable at exact rationals.

    Evaluation order: net value if x carries a net point, else the
    enumeration value if x is in the empty-slice set, else the backbone.
    """

    regime: Regime
    target: TargetSet
    approx: CountableApprox
    c_points: Tuple[Fraction, ...]
    c_values: Dict[Fraction, Fraction]
    levels: Optional[LevelSets]
    signed: bool
    depth: int
    a_values: Dict[Fraction, Fraction] = field(repr=False, default_factory=dict)

    def classify(self, x: RatLike) -> str:
        x = rat(x)
        if x in self.a_values:
            return "A"
        if x in self.c_values:
            return "C"
        return "B"

    def backbone_value(self, x: RatLike) -> Fraction:
        if self.regime.bounded:
            return f0_bounded(self.target, x)
        return f0_unbounded(self.target, x)

    def evaluate(self, x: RatLike) -> Fraction:
        x = rat(x)
        if not ZERO <= x <= ONE:
            raise ValueError(f"x={x} outside [0, 1]")
        hit = self.a_values.get(x)
        if hit is not None:
            return hit
        hit = self.c_values.get(x)
        if hit is not None:
            return hit
        return self.backbone_value(x)

    def __call__(self, x: RatLike) -> Fraction:
        return self.evaluate(x)


def evaluate(f: SynthFunction, x: RatLike) -> Fraction:
    return f.evaluate(x)


def synthesize(target: TargetSet, regime: Regime, depth: int = 10,
               signed: bool = False,
               c_order: Optional[Sequence[RatLike]] = None) -> SynthFunction:
    """Build the witness function for a regime the target satisfies.

    The net avoids the sets the construction must stay clear of: nothing in
    the bounded Baire-2 regime, the empty-slice set C in the unbounded
    regimes, and additionally the multi-valued set D in the Baire-1
    regimes. The enumeration of C is ascending by default and can be
    overridden (it must list exactly the points of C).
    """
    verdict = check_regime(target, regime)
    if not verdict.passed:
        raise RegimeUnsatisfiedError(verdict)

    c_set = empty_slice_set(target)
    c_points = [rat(c) for c in c_order] if c_order is not None else sorted(c_set.isolated_points())
    if sorted(c_points) != sorted(c_set.isolated_points()):
        raise ValueError("c_order must enumerate exactly the empty-slice points")

    avoid = XSet.empty()
    if not regime.bounded:
        avoid = avoid | XSet.points(c_points)
    if regime is Regime.B1_BOUNDED:
        avoid = avoid | multiplicity_sets(target, n_max=1).D
    elif regime is Regime.B1:
        avoid = avoid | extended_multiplicity_set(target)

    approx = lemma31_net(target, depth, avoid)
    levels = None if regime.bounded else u_sets(target, depth)
    c_values = {} if regime.bounded else f_on_c(c_points, target, signed)

    return SynthFunction(
        regime=regime,
        target=target,
        approx=approx,
        c_points=tuple(c_points),
        c_values=c_values,
        levels=levels,
        signed=signed,
        depth=depth,
        a_values=approx.a_values(),
    )
