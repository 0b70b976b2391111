"""Nested open-strip certificates around a synthesized function.

A strip is an open planar set whose every vertical cross-section is an open
interval. Around the graph of a synthesized function we place one open ball
per sampled center and level, radius eps_{x,n}, then extend the union of
balls to a strip by taking per-column inf/sup of the chord union. The
radii obey, per level n:

* eps <= 1/n and eps <= eps at the previous level;
* the ball's x-shadow excludes the first n net points a_1..a_n and (in the
  unbounded regimes) the first n empty-slice points c_1..c_n, except the
  center itself;
* net centers stay clear of the first n diameter level sets D_1..D_n
  (Baire-1 regimes);
* backbone centers stay clear of the first n enumerated closed level parts
  W_1..W_n not containing them (unbounded regimes);
* backbone centers obey the one-sided overlap condition: every backbone
  point r in the shadow (within the same level part) has
  f0(r) - f0(x) < 1/n.

The overlap radius is computed exactly: the set of offending r is the
x-projection of the target clipped to the band {y >= f0(x) + 1/n} (capped
at the level band in the unbounded case), and the radius is the exact
rational distance from the center to that projection.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from .conditions import Regime, multiplicity_sets
from .geometry import TargetSet
from .intervals import ZERO, RatLike, Span, XSet, rat
from .synthesis import SynthFunction, level_index


class ScheduleInfeasibleError(Exception):
    """A separation condition forced a nonpositive radius.

    This signals an inconsistency between the checker and the synthesis
    (the regime preconditions rule it out), so it is an internal error.
    """


# Radii are shrunk by a relative 2^-20 below their maximal legal value so
# that every exclusion stays strict after conversion to floats (the shadow
# boundary frequently lands exactly on the excluded point otherwise).
_SHRINK = Fraction((1 << 20) - 1, 1 << 20)


@dataclass(frozen=True)
class EpsilonSchedule:
    depth: int
    columns: Tuple[Fraction, ...]
    kinds: Tuple[str, ...]                 # 'A' | 'C' | 'B' per column
    eps: Tuple[Tuple[Fraction, ...], ...]  # [column][level-1]
    sep_index: Dict[int, int]              # column index -> separation level


@dataclass(frozen=True)
class StripLevel:
    n: int
    lo: np.ndarray
    hi: np.ndarray
    chords: np.ndarray


@dataclass(frozen=True)
class StripFamily:
    schedule: EpsilonSchedule
    col_floats: np.ndarray
    f_floats: np.ndarray
    levels: Tuple[StripLevel, ...]


# ---------------------------------------------------------------------------
# Radius schedule
# ---------------------------------------------------------------------------


def epsilon_schedule(f: SynthFunction, centers: Sequence[RatLike],
                     depth: Optional[int] = None) -> EpsilonSchedule:
    """Choose legal ball radii for every center and level.

    Centers are completed with all net points and empty-slice points; the
    caller supplies at least the verification grid.
    """
    if depth is None:
        depth = f.depth
    col_set = {rat(c) for c in centers}
    col_set.update(f.a_values.keys())
    col_set.update(f.c_values.keys())
    columns = tuple(sorted(col_set))
    kinds = tuple(f.classify(x) for x in columns)

    a_enum = f.approx.a_enumeration
    a_first = a_enum[:depth]
    c_first = list(f.c_points)[:depth]
    unbounded = not f.regime.bounded
    baire1 = f.regime.baire1
    d_levels = multiplicity_sets(f.target, n_max=depth).D_n if baire1 else []
    w_parts: List[Tuple[int, Span]] = []
    if unbounded and f.levels is not None:
        w_parts = list(f.levels.W[:depth])

    a_rank = {x: i + 1 for i, x in enumerate(a_enum)}
    c_rank = {c: i + 1 for i, c in enumerate(f.c_points)}

    v_cache: Dict[int, XSet] = {}

    def v_part(k: int) -> XSet:
        if f.levels is not None and k <= f.levels.depth:
            return f.levels.V[k - 1]
        if k not in v_cache:
            u_k = f.target.clipped(Fraction(-k), Fraction(k)).x_projection()
            u_prev = f.target.clipped(Fraction(-(k - 1)), Fraction(k - 1)).x_projection()
            v_cache[k] = u_k - u_prev
        return v_cache[k]

    eps_rows: List[Tuple[Fraction, ...]] = []
    sep_index: Dict[int, int] = {}

    for idx, x in enumerate(columns):
        kind = kinds[idx]
        if kind == "A":
            sep_index[idx] = a_rank[x]
        elif kind == "C":
            sep_index[idx] = c_rank[x]
        fx: Optional[Fraction] = None
        kx: Optional[int] = None
        if kind == "B":
            fx = f.backbone_value(x)
            if unbounded:
                kx = level_index(f.target, x)
        row: List[Fraction] = []
        prev: Optional[Fraction] = None
        for n in range(1, depth + 1):
            bound = Fraction(1, n)
            if prev is not None and prev < bound:
                bound = prev
            for a in a_first[:n]:
                if a != x:
                    gap = abs(x - a)
                    if gap < bound:
                        bound = gap
            if unbounded:
                for c in c_first[:n]:
                    if c != x:
                        gap = abs(x - c)
                        if gap < bound:
                            bound = gap
            if kind == "A" and baire1:
                for i in range(n):
                    d = d_levels[i].distance_to(x)
                    if d is not None:
                        if d == 0:
                            raise ScheduleInfeasibleError(
                                f"net point {x} touches diameter level set {i + 1}"
                            )
                        if d < bound:
                            bound = d
            if kind == "B":
                for _, part in w_parts[:n]:
                    if not part.contains(x):
                        d = part.distance_to(x)
                        if d == 0:
                            raise ScheduleInfeasibleError(
                                f"backbone center {x} touches a foreign level part"
                            )
                        if d < bound:
                            bound = d
                assert fx is not None
                over = _overlap_bound(f, x, fx, kx, n, v_part)
                if over is not None and over < bound:
                    bound = over
            if bound <= 0:
                raise ScheduleInfeasibleError(
                    f"radius collapsed to {bound} at center {x}, level {n}"
                )
            bound *= _SHRINK
            row.append(bound)
            prev = bound
        eps_rows.append(tuple(row))

    return EpsilonSchedule(depth, columns, kinds, tuple(eps_rows), sep_index)


def _overlap_bound(f: SynthFunction, x: Fraction, fx: Fraction,
                   kx: Optional[int], n: int, v_part) -> Optional[Fraction]:
    """Exact largest radius respecting f0(r) - f0(x) < 1/n on the shadow.

    Offending points form the x-projection of the target clipped to
    y >= f0(x) + 1/n (intersected with the level band and the center's own
    level part in the unbounded regimes); the bound is the distance to that
    closed set. The center itself never lies in it, so the bound is
    positive.
    """
    theta = fx + Fraction(1, n)
    if f.regime.bounded:
        bad = f.target.clipped(theta, None).x_projection()
    else:
        assert kx is not None
        k = Fraction(kx)
        lo = max(theta, -k)
        if lo > k:
            return None
        bad = f.target.clipped(lo, k).x_projection()
        bad = bad & v_part(kx)
    d = bad.distance_to(x)
    if d is None:
        return None
    if d == 0:
        raise ScheduleInfeasibleError(
            f"overlap condition unsatisfiable at center {x}, level {n}"
        )
    return d


# ---------------------------------------------------------------------------
# Strip construction
# ---------------------------------------------------------------------------


def build_strip(f: SynthFunction, sched: EpsilonSchedule, n: int,
                col_floats: Optional[np.ndarray] = None,
                f_floats: Optional[np.ndarray] = None) -> StripLevel:
    """One strip level: per-column (inf, sup) over the union of ball chords.

    A column crossed by no ball inherits the full chord of the nearest
    center's ball; with the columns themselves all being centers this
    branch is defensive only.
    """
    cols = sched.columns
    m = len(cols)
    if col_floats is None:
        col_floats = np.array([float(x) for x in cols])
    if f_floats is None:
        f_floats = np.array([float(f.evaluate(x)) for x in cols])
    lo = np.full(m, np.inf)
    hi = np.full(m, -np.inf)
    cnt = np.zeros(m, dtype=np.int64)
    for i in range(m):
        e = float(sched.eps[i][n - 1])
        xc = col_floats[i]
        fc = f_floats[i]
        left = int(np.searchsorted(col_floats, xc - e, side="right"))
        right = int(np.searchsorted(col_floats, xc + e, side="left"))
        if left < right:
            dx = col_floats[left:right] - xc
            hw = np.sqrt(np.maximum(e * e - dx * dx, 0.0))
            np.minimum(lo[left:right], fc - hw, out=lo[left:right])
            np.maximum(hi[left:right], fc + hw, out=hi[left:right])
            cnt[left:right] += 1
        if not (left <= i < right):
            # Own column fell out through float rounding of a tiny radius.
            lo[i] = min(lo[i], fc - e)
            hi[i] = max(hi[i], fc + e)
            cnt[i] += 1
    untouched = np.nonzero(cnt == 0)[0]
    for j in untouched:
        i = int(np.argmin(np.abs(col_floats - col_floats[j])))
        e = float(sched.eps[i][n - 1])
        lo[j] = f_floats[i] - e
        hi[j] = f_floats[i] + e
        cnt[j] = 1
    return StripLevel(n, lo, hi, cnt)


def build_strip_family(f: SynthFunction, sched: EpsilonSchedule) -> StripFamily:
    col_floats = np.array([float(x) for x in sched.columns])
    f_floats = np.array([float(f.evaluate(x)) for x in sched.columns])
    levels = tuple(
        build_strip(f, sched, n, col_floats, f_floats)
        for n in range(1, sched.depth + 1)
    )
    return StripFamily(sched, col_floats, f_floats, levels)


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class StripLevelReport:
    n: int
    nesting_ok: bool
    coverage_ok: bool
    max_width_a: float
    max_width_c: float
    max_width_backbone: float
    a_width_ok: bool
    c_width_ok: bool
    single_chord_ok: bool
    backbone_bound_ok: bool

    def line(self) -> str:
        return (
            f"STRIP n={self.n}"
            f" nesting={'OK' if self.nesting_ok else 'FAIL'}"
            f" coverage={'OK' if self.coverage_ok else 'FAIL'}"
            f" max_width_A={self.max_width_a:.6g}"
            f" max_width_C={self.max_width_c:.6g}"
        )


@dataclass(frozen=True)
class StripReport:
    levels: Tuple[StripLevelReport, ...]
    passed: bool

    def lines(self) -> List[str]:
        out = [lvl.line() for lvl in self.levels]
        out.append(f"STRIPS {'PASS' if self.passed else 'FAIL'}")
        return out


def verify_strips(family: StripFamily, f: SynthFunction,
                  tol: float = 1e-9) -> StripReport:
    """Check nesting, coverage and column collapse of a strip family.

    Collapse is asserted at net and empty-slice columns once the level has
    passed the column's separation index: the cross-section there is a
    single chord of width at most 2/n. Backbone columns off the
    multi-valued set are checked against 2/n plus twice the local spread
    of function values within ball reach.
    """
    sched = family.schedule
    cols = family.col_floats
    fv = family.f_floats
    kinds = np.array(sched.kinds)
    m = len(cols)

    d_set = multiplicity_sets(f.target, n_max=1).D
    backbone_checked = np.array([
        kinds[i] == "B" and not d_set.contains(sched.columns[i])
        for i in range(m)
    ])

    reports: List[StripLevelReport] = []
    prev: Optional[StripLevel] = None
    all_ok = True
    for level in family.levels:
        n = level.n
        nesting_ok = True
        if prev is not None:
            nesting_ok = bool(
                np.all(level.lo >= prev.lo) and np.all(level.hi <= prev.hi)
            )
        coverage_ok = bool(np.all((level.lo < fv) & (fv < level.hi)))
        widths = level.hi - level.lo
        bound = 2.0 / n + tol

        def class_stats(kind: str) -> Tuple[float, bool, bool]:
            sel = [
                i for i in range(m)
                if kinds[i] == kind and sched.sep_index.get(i, 10 ** 9) <= n
            ]
            if not sel:
                return 0.0, True, True
            w = float(widths[sel].max())
            single = bool(np.all(level.chords[sel] == 1))
            return w, w <= bound, single

        max_a, a_ok, a_single = class_stats("A")
        max_c, c_ok, c_single = class_stats("C")

        # Backbone residual: width within 2/n plus twice the spread of
        # center values within the maximal shadow 1/n.
        backbone_ok = True
        max_b = 0.0
        reach = 1.0 / n
        idxs = np.nonzero(backbone_checked)[0]
        for i in idxs:
            left = int(np.searchsorted(cols, cols[i] - reach, side="right"))
            right = int(np.searchsorted(cols, cols[i] + reach, side="left"))
            window = fv[left:right]
            osc = float(window.max() - window.min()) if window.size else 0.0
            w = float(widths[i])
            max_b = max(max_b, w)
            if w > 2.0 / n + 2.0 * osc + tol:
                backbone_ok = False
        single_ok = a_single and c_single
        level_ok = (nesting_ok and coverage_ok and a_ok and c_ok
                    and single_ok and backbone_ok)
        all_ok = all_ok and level_ok
        reports.append(StripLevelReport(
            n=n,
            nesting_ok=nesting_ok,
            coverage_ok=coverage_ok,
            max_width_a=max_a,
            max_width_c=max_c,
            max_width_backbone=max_b,
            a_width_ok=a_ok,
            c_width_ok=c_ok,
            single_chord_ok=single_ok,
            backbone_bound_ok=backbone_ok,
        ))
        prev = level
    return StripReport(tuple(reports), all_ok)
