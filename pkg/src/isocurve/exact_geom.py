"""Exact rational geometry kernel.

All coordinates are :class:`fractions.Fraction` values, so every predicate
below is decided exactly.  Orientation follows the usual convention: ``+1``
for a counterclockwise triple, ``-1`` for clockwise, ``0`` for collinear.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction
from numbers import Rational as _RationalABC
from typing import NamedTuple, Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]


class ParallelLines(ValueError):
    """Raised when intersecting two lines that never meet."""


def rational(value: RationalLike) -> Fraction:
    """Coerce ``value`` to a normalized Fraction.

    Strings use the ``"p/q"`` or ``"p"`` form with optional leading minus.
    Floats are rejected so that nothing inexact leaks into the kernel.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, (int, _RationalABC)):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def format_rational(q: Fraction) -> str:
    return str(q)


class Point(NamedTuple):
    x: Fraction
    y: Fraction

    @classmethod
    def of(cls, x: RationalLike, y: RationalLike) -> "Point":
        return cls(rational(x), rational(y))

    def __add__(self, other):  # type: ignore[override]
        return Point(self.x + other[0], self.y + other[1])

    def __sub__(self, other):
        return Point(self.x - other[0], self.y - other[1])


@dataclass(frozen=True)
class Segment:
    a: Point
    b: Point

    def __post_init__(self):
        if self.a == self.b:
            raise ValueError("segment endpoints must differ")

    @classmethod
    def of(cls, a, b) -> "Segment":
        return cls(Point.of(*a), Point.of(*b))

    def reversed(self) -> "Segment":
        return Segment(self.b, self.a)


class CrossingSign(enum.IntEnum):
    NEGATIVE = -1
    NONE = 0
    POSITIVE = 1


def _sign(v) -> int:
    return (v > 0) - (v < 0)


def det2(p: Point, q: Point, r: Point) -> Fraction:
    """Twice the signed area of the triangle ``pqr``."""
    return (p.x - r.x) * (q.y - r.y) - (p.y - r.y) * (q.x - r.x)


def _diff(a: Fraction, b: Fraction) -> tuple[int, int]:
    # a - b as an unreduced (numerator, positive denominator) pair
    ad, bd = a.denominator, b.denominator
    if ad == bd:
        return a.numerator - b.numerator, ad
    return a.numerator * bd - b.numerator * ad, ad * bd


def orient(p: Point, q: Point, r: Point) -> int:
    # sign of det2 by integer cross-multiplication; skips Fraction normalization
    u1, v1 = _diff(p.x, r.x)
    w1, x1 = _diff(q.y, r.y)
    u2, v2 = _diff(p.y, r.y)
    w2, x2 = _diff(q.x, r.x)
    return _sign(u1 * w1 * v2 * x2 - u2 * w2 * v1 * x1)


def direction_det(e: Segment, f: Segment) -> Fraction:
    return (e.b.x - e.a.x) * (f.b.y - f.a.y) - (e.b.y - e.a.y) * (f.b.x - f.a.x)


def parallel(e: Segment, f: Segment) -> bool:
    return direction_det(e, f) == 0


def line_coefficients(e: Segment) -> tuple[Fraction, Fraction, Fraction]:
    """Homogeneous coefficients ``(dy, -dx, x1*y0 - x0*y1)`` of the supporting line."""
    (x0, y0), (x1, y1) = e.a, e.b
    return (y1 - y0, -(x1 - x0), x1 * y0 - x0 * y1)


def _det3(rows) -> Fraction:
    (a, b, c), (d, e, f), (g, h, i) = rows
    return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g)


def concurrency_det(e: Segment, f: Segment, g: Segment) -> Fraction:
    return _det3([line_coefficients(e), line_coefficients(f), line_coefficients(g)])


def concurrent(e: Segment, f: Segment, g: Segment) -> bool:
    """Whether the three supporting lines share a point.

    Only meaningful when no two of the segments are parallel; for parallel
    pairs the determinant also vanishes when the third line is parallel too.
    """
    return concurrency_det(e, f, g) == 0


def segments_cross(e: Segment, f: Segment) -> bool:
    """True iff ``e`` and ``f`` meet transversally at one interior point."""
    return (
        det2(e.a, f.a, f.b) * det2(e.b, f.a, f.b) < 0
        and det2(e.a, e.b, f.a) * det2(e.a, e.b, f.b) < 0
    )


def crossing_sign(e: Segment, f: Segment) -> CrossingSign:
    """Direction in which the directed segment ``e`` crosses ``f``.

    POSITIVE means ``e`` passes from the right of ``f`` to its left.
    """
    s1 = orient(e.a, f.a, f.b)
    s2 = orient(e.b, f.a, f.b)
    s3 = orient(e.a, e.b, f.a)
    s4 = orient(e.a, e.b, f.b)
    if s1 < 0 and s2 > 0 and s3 > 0 and s4 < 0:
        return CrossingSign.POSITIVE
    if s1 > 0 and s2 < 0 and s3 < 0 and s4 > 0:
        return CrossingSign.NEGATIVE
    return CrossingSign.NONE


def line_intersection(e: Segment, f: Segment) -> Point:
    a1, b1, c1 = line_coefficients(e)
    a2, b2, c2 = line_coefficients(f)
    d = a1 * b2 - a2 * b1
    if d == 0:
        raise ParallelLines(f"{e} and {f} are parallel")
    # a*x + b*y + c = 0 for both lines
    return Point((b1 * c2 - b2 * c1) / d, (a2 * c1 - a1 * c2) / d)


def x_between(origin: Point, p: Point, q: Point) -> bool:
    """Whether ``p`` lies strictly between ``origin`` and ``q`` in x-order."""
    return (origin.x - p.x) * (p.x - q.x) > 0
