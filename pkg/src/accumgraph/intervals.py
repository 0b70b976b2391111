"""Exact rational interval sets.

Two representations are used throughout the package:

* ``XSet`` -- a finite union of subintervals of [0, 1] with independent
  open/closed endpoint flags (isolated points are degenerate closed spans).
  Supports exact union, intersection, complement and difference within
  [0, 1].
* ``SliceSet`` -- a finite union of closed intervals on a vertical line,
  used for the values a target set takes above a single x.

All endpoints are ``fractions.Fraction``; no floating point enters the set
algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence, Tuple, Union

RatLike = Union[Fraction, int, float, str]

ZERO = Fraction(0)
ONE = Fraction(1)


def rat(value: RatLike) -> Fraction:
    """Coerce ints, floats, 'p/q' strings and decimal strings to Fraction."""
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


@dataclass(frozen=True)
class Span:
    """One maximal subinterval: endpoints plus openness flags.

    A degenerate span (lo == hi) must be closed on both sides and encodes an
    isolated point.
    """

    lo: Fraction
    hi: Fraction
    lo_open: bool = False
    hi_open: bool = False

    def __post_init__(self) -> None:
        if self.lo > self.hi:
            raise ValueError(f"span endpoints out of order: {self.lo} > {self.hi}")
        if self.lo == self.hi and (self.lo_open or self.hi_open):
            raise ValueError("degenerate span must be closed")

    @property
    def is_point(self) -> bool:
        return self.lo == self.hi

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, x: Fraction) -> bool:
        if x < self.lo or x > self.hi:
            return False
        if x == self.lo and self.lo_open:
            return False
        if x == self.hi and self.hi_open:
            return False
        return True

    def closure(self) -> "Span":
        if self.lo_open or self.hi_open:
            return Span(self.lo, self.hi)
        return self

    def distance_to(self, x: Fraction) -> Fraction:
        """Distance from x to the closure of the span."""
        if x < self.lo:
            return self.lo - x
        if x > self.hi:
            return x - self.hi
        return ZERO

    def __str__(self) -> str:
        if self.is_point:
            return f"{{{self.lo}}}"
        lb = "(" if self.lo_open else "["
        rb = ")" if self.hi_open else "]"
        return f"{lb}{self.lo}, {self.hi}{rb}"


def _make_span(lo: Fraction, hi: Fraction, lo_open: bool, hi_open: bool) -> Optional[Span]:
    """Build a span, returning None when the data describes the empty set."""
    if lo > hi:
        return None
    if lo == hi and (lo_open or hi_open):
        return None
    return Span(lo, hi, lo_open, hi_open)


def _merge(a: Span, b: Span) -> Optional[Span]:
    """Union of two spans when it is again a span; None when disjoint.

    Assumes a.lo <= b.lo (sorted order).
    """
    if b.lo > a.hi:
        return None
    if b.lo == a.hi and a.hi_open and b.lo_open:
        return None
    # Pick the larger right endpoint; on ties the point is kept if either
    # span keeps it.
    if b.hi > a.hi:
        hi, hi_open = b.hi, b.hi_open
    elif b.hi < a.hi:
        hi, hi_open = a.hi, a.hi_open
    else:
        hi, hi_open = a.hi, a.hi_open and b.hi_open
    if a.lo == b.lo:
        lo_open = a.lo_open and b.lo_open
    else:
        lo_open = a.lo_open
    return Span(a.lo, hi, lo_open, hi_open)


def span_intersection(a: Span, b: Span) -> Optional[Span]:
    """Intersection of two spans, or None when empty."""
    if b.lo > a.hi or a.lo > b.hi:
        return None
    return _intersect(a, b)


def _intersect(a: Span, b: Span) -> Optional[Span]:
    if a.lo > b.lo:
        lo, lo_open = a.lo, a.lo_open
    elif b.lo > a.lo:
        lo, lo_open = b.lo, b.lo_open
    else:
        lo, lo_open = a.lo, a.lo_open or b.lo_open
    if a.hi < b.hi:
        hi, hi_open = a.hi, a.hi_open
    elif b.hi < a.hi:
        hi, hi_open = b.hi, b.hi_open
    else:
        hi, hi_open = a.hi, a.hi_open or b.hi_open
    return _make_span(lo, hi, lo_open, hi_open)


class XSet:
    """Finite union of subintervals of [0, 1], normalized and exact."""

    __slots__ = ("spans",)

    def __init__(self, spans: Iterable[Span] = ()) -> None:
        items = sorted(spans, key=lambda s: (s.lo, s.lo_open, s.hi, s.hi_open))
        merged: list[Span] = []
        for span in items:
            if span.lo < ZERO or span.hi > ONE:
                raise ValueError(f"span {span} outside [0, 1]")
            if merged:
                joined = _merge(merged[-1], span)
                if joined is not None:
                    merged[-1] = joined
                    continue
            merged.append(span)
        object.__setattr__(self, "spans", tuple(merged))

    # -- constructors -------------------------------------------------

    @classmethod
    def empty(cls) -> "XSet":
        return cls(())

    @classmethod
    def full(cls) -> "XSet":
        return cls((Span(ZERO, ONE),))

    @classmethod
    def point(cls, x: RatLike) -> "XSet":
        x = rat(x)
        return cls((Span(x, x),))

    @classmethod
    def points(cls, xs: Iterable[RatLike]) -> "XSet":
        return cls(tuple(Span(rat(x), rat(x)) for x in xs))

    @classmethod
    def closed(cls, lo: RatLike, hi: RatLike) -> "XSet":
        return cls((Span(rat(lo), rat(hi)),))

    @classmethod
    def interval(cls, lo: RatLike, hi: RatLike, lo_open: bool = False,
                 hi_open: bool = False) -> "XSet":
        span = _make_span(rat(lo), rat(hi), lo_open, hi_open)
        return cls(() if span is None else (span,))

    # -- queries ------------------------------------------------------

    @property
    def is_empty(self) -> bool:
        return not self.spans

    def __bool__(self) -> bool:
        return bool(self.spans)

    def __iter__(self) -> Iterator[Span]:
        return iter(self.spans)

    def contains(self, x: RatLike) -> bool:
        x = rat(x)
        return any(s.contains(x) for s in self.spans)

    def contains_interval(self) -> bool:
        """True when some span has nonempty interior."""
        return any(s.lo < s.hi for s in self.spans)

    def widest_interval(self) -> Optional[Span]:
        best: Optional[Span] = None
        for s in self.spans:
            if s.lo < s.hi and (best is None or s.width > best.width):
                best = s
        return best

    def isolated_points(self) -> list[Fraction]:
        return [s.lo for s in self.spans if s.is_point]

    def measure(self) -> Fraction:
        return sum((s.width for s in self.spans), ZERO)

    def distance_to(self, x: RatLike) -> Optional[Fraction]:
        """Distance from x to the closure of the set; None when empty."""
        x = rat(x)
        if not self.spans:
            return None
        return min(s.distance_to(x) for s in self.spans)

    # -- algebra ------------------------------------------------------

    def union(self, other: "XSet") -> "XSet":
        return XSet(self.spans + other.spans)

    __or__ = union

    def complement(self) -> "XSet":
        """Complement within [0, 1]."""
        gaps: list[Span] = []
        cursor = ZERO
        cursor_open = False  # whether `cursor` itself is excluded from the gap
        for s in self.spans:
            gap = _make_span(cursor, s.lo, cursor_open, not s.lo_open)
            if gap is not None:
                gaps.append(gap)
            cursor, cursor_open = s.hi, not s.hi_open
        tail = _make_span(cursor, ONE, cursor_open, False)
        if tail is not None:
            gaps.append(tail)
        return XSet(gaps)

    def intersection(self, other: "XSet") -> "XSet":
        out: list[Span] = []
        for a in self.spans:
            for b in other.spans:
                if b.lo > a.hi or a.lo > b.hi:
                    continue
                got = _intersect(a, b)
                if got is not None:
                    out.append(got)
        return XSet(out)

    __and__ = intersection

    def difference(self, other: "XSet") -> "XSet":
        return self.intersection(other.complement())

    __sub__ = difference

    def is_subset_of(self, other: "XSet") -> bool:
        return (self - other).is_empty

    # -- plumbing -----------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, XSet):
            return NotImplemented
        return self.spans == other.spans

    def __hash__(self) -> int:
        return hash(self.spans)

    def __repr__(self) -> str:
        if not self.spans:
            return "XSet()"
        return "XSet(" + " u ".join(str(s) for s in self.spans) + ")"


class SliceSet:
    """Finite union of closed intervals [a, b] on a vertical line."""

    __slots__ = ("intervals",)

    def __init__(self, intervals: Iterable[Tuple[Fraction, Fraction]] = ()) -> None:
        items = sorted((rat(a), rat(b)) for a, b in intervals)
        merged: list[Tuple[Fraction, Fraction]] = []
        for a, b in items:
            if a > b:
                raise ValueError(f"slice interval out of order: ({a}, {b})")
            if merged and a <= merged[-1][1]:
                prev_a, prev_b = merged[-1]
                merged[-1] = (prev_a, max(prev_b, b))
            else:
                merged.append((a, b))
        object.__setattr__(self, "intervals", tuple(merged))

    @classmethod
    def empty(cls) -> "SliceSet":
        return cls(())

    @classmethod
    def single(cls, y: RatLike) -> "SliceSet":
        y = rat(y)
        return cls(((y, y),))

    @property
    def is_empty(self) -> bool:
        return not self.intervals

    def __bool__(self) -> bool:
        return bool(self.intervals)

    def __iter__(self) -> Iterator[Tuple[Fraction, Fraction]]:
        return iter(self.intervals)

    def contains(self, y: RatLike) -> bool:
        y = rat(y)
        return any(a <= y <= b for a, b in self.intervals)

    def min_value(self) -> Fraction:
        if not self.intervals:
            raise ValueError("empty slice has no minimum")
        return self.intervals[0][0]

    def max_value(self) -> Fraction:
        if not self.intervals:
            raise ValueError("empty slice has no maximum")
        return self.intervals[-1][1]

    def diameter(self) -> Fraction:
        """Max minus min; zero for a single point, undefined when empty."""
        if not self.intervals:
            raise ValueError("empty slice has no diameter")
        return self.max_value() - self.min_value()

    def is_multivalued(self) -> bool:
        """True when the set has more than one point."""
        if len(self.intervals) > 1:
            return True
        if not self.intervals:
            return False
        a, b = self.intervals[0]
        return a < b

    def min_abs(self) -> Fraction:
        """Minimum of |y| over the set; undefined when empty."""
        if not self.intervals:
            raise ValueError("empty slice has no min_abs")
        best: Optional[Fraction] = None
        for a, b in self.intervals:
            if a <= ZERO <= b:
                return ZERO
            cand = min(abs(a), abs(b))
            if best is None or cand < best:
                best = cand
        assert best is not None
        return best

    def clipped(self, lo: Fraction, hi: Fraction) -> "SliceSet":
        out = []
        for a, b in self.intervals:
            na, nb = max(a, lo), min(b, hi)
            if na <= nb:
                out.append((na, nb))
        return SliceSet(out)

    def union(self, other: "SliceSet") -> "SliceSet":
        return SliceSet(self.intervals + other.intervals)

    __or__ = union

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, SliceSet):
            return NotImplemented
        return self.intervals == other.intervals

    def __hash__(self) -> int:
        return hash(self.intervals)

    def __repr__(self) -> str:
        if not self.intervals:
            return "SliceSet()"
        parts = []
        for a, b in self.intervals:
            parts.append(f"{{{a}}}" if a == b else f"[{a}, {b}]")
        return "SliceSet(" + " u ".join(parts) + ")"


def rational_sqrt(value: Fraction) -> Optional[Fraction]:
    """Exact square root of a nonnegative rational, or None if irrational."""
    if value < 0:
        raise ValueError("negative radicand")
    if value == 0:
        return ZERO
    num, den = value.numerator, value.denominator
    rn = _isqrt_exact(num)
    if rn is None:
        return None
    rd = _isqrt_exact(den)
    if rd is None:
        return None
    return Fraction(rn, rd)


def _isqrt_exact(n: int) -> Optional[int]:
    import math

    r = math.isqrt(n)
    return r if r * r == n else None
