"""Constraint curves: arcs centred on the axis and chains of line segments.

Points are stored as ``Point(x, y2)`` where ``y2`` is the square of a
nonnegative ordinate.  Keeping y**2 instead of y lets points such as
(0, 3*sqrt(3)) or (1/8, sqrt(3)/8) stay exact: the distortion only ever needs
(s - x)**2 + y**2.
"""

from __future__ import annotations

import contextlib
import math
import re
from dataclasses import dataclass
from fractions import Fraction

import gmpy2
from gmpy2 import mpfr

from ._numbers import (
    DEFAULT_PRECISION,
    exact_sqrt,
    format_decimal,
    format_ordinate,
    format_rational,
    is_exact,
    parse_ordinate_squared,
    to_fraction,
    to_mpfr,
    working,
)
from .errors import NotOnSubarc, OutOfRange

_MPFR = type(mpfr(0))


@dataclass(frozen=True)
class Point:
    """A point (x, y) of the closed upper half-plane, stored as (x, y**2)."""

    x: object
    y2: object

    def __post_init__(self):
        if self.y2 < 0:
            raise ValueError(f"negative squared ordinate {self.y2}")

    @classmethod
    def from_xy(cls, x, y) -> "Point":
        """Build from an abscissa and an ordinate (rational, decimal or "c*sqrt(r)")."""
        if isinstance(y, _MPFR):
            return cls(x if isinstance(x, _MPFR) else to_fraction(x), y * y)
        return cls(x if isinstance(x, _MPFR) else to_fraction(x), parse_ordinate_squared(y))

    @property
    def exact(self) -> bool:
        return is_exact(self.x) and is_exact(self.y2)

    @property
    def y(self):
        if is_exact(self.y2):
            r = exact_sqrt(Fraction(self.y2))
            if r is not None:
                return r
            return gmpy2.sqrt(mpfr(gmpy2.mpq(self.y2.numerator, self.y2.denominator)))
        return gmpy2.sqrt(self.y2)

    def as_floats(self) -> tuple[float, float]:
        return float(self.x), math.sqrt(float(self.y2))

    def key(self, bits: int | None = None):
        """Hashable identity; inexact coordinates are rounded to ``bits`` bits."""
        if self.exact or bits is None:
            return (self.x, self.y2)
        return (mpfr(self.x, bits), mpfr(self.y2, bits))

    def reflected(self, axis_x=0) -> "Point":
        """Mirror image in the vertical line x = axis_x."""
        return Point(2 * axis_x - self.x, self.y2)

    def strings(self, digits: int = 30) -> tuple[str, str]:
        """(x, y) as exact strings when possible, else decimals."""
        if is_exact(self.x):
            xs = format_rational(self.x)
        else:
            xs = format_decimal(self.x, digits)
        if is_exact(self.y2):
            ys = format_ordinate(Fraction(self.y2))
        else:
            ys = format_decimal(gmpy2.sqrt(self.y2), digits)
        return xs, ys

    def __str__(self):
        xs, ys = self.strings(12)
        return f"({xs}, {ys})"


# ---------------------------------------------------------------------------
# angles


_PI_RE = re.compile(r"^\s*(?:(?P<num>[0-9./]+)\s*\*?\s*)?pi\s*(?:/\s*(?P<den>[0-9]+))?\s*$")

# multiples of pi (as fractions of a half turn) whose cosine is rational
_RATIONAL_COS = {
    Fraction(0): Fraction(1),
    Fraction(1, 3): Fraction(1, 2),
    Fraction(1, 2): Fraction(0),
    Fraction(2, 3): Fraction(-1, 2),
    Fraction(1): Fraction(-1),
}


@dataclass(frozen=True)
class Angle:
    """An angle in radians, remembering an exact multiple of pi when known."""

    radians: float
    pi_multiple: Fraction | None = None

    @classmethod
    def parse(cls, value) -> "Angle":
        if isinstance(value, Angle):
            return value
        if isinstance(value, str):
            m = _PI_RE.match(value.lower())
            if m:
                q = Fraction(m.group("num") or 1) / int(m.group("den") or 1)
                return cls(float(q) * math.pi, q)
            value = float(value)
        if isinstance(value, Fraction) or isinstance(value, int):
            if value == 0:
                return cls(0.0, Fraction(0))
            value = float(value)
        value = float(value)
        # decimal renderings of pi (e.g. 3.14159265358979) snap to the exact angle
        q = Fraction(value / math.pi).limit_denominator(12)
        if abs(float(q) * math.pi - value) < 1e-9:
            return cls(float(q) * math.pi, q)
        return cls(value, None)

    def cos(self, bits: int = DEFAULT_PRECISION):
        if self.pi_multiple is not None and self.pi_multiple in _RATIONAL_COS:
            return _RATIONAL_COS[self.pi_multiple]
        with working(bits):
            if self.pi_multiple is not None:
                q = self.pi_multiple
                return gmpy2.cos(gmpy2.const_pi() * q.numerator / q.denominator)
            return gmpy2.cos(mpfr(self.radians))

    def __str__(self):
        q = self.pi_multiple
        if q is None:
            return repr(self.radians)
        if q == 0:
            return "0"
        num = "" if q.numerator == 1 else f"{q.numerator}*"
        den = "" if q.denominator == 1 else f"/{q.denominator}"
        return f"{num}pi{den}"

    def __lt__(self, other):
        return self.radians < other.radians


# ---------------------------------------------------------------------------
# pieces


class Segment:
    """Line segment from p0 to p1 in the upper half-plane, t in [0, 1].

    P(t) = p0 + t (p1 - p0).  With y0, y1 >= 0 the squared ordinate is
    (1-t)**2 y0**2 + 2 t (1-t) y0 y1 + t**2 y1**2, so exactness needs y0*y1
    rational, which holds whenever y0**2 * y1**2 is a rational square.
    """

    kind = "segment"

    def __init__(self, p0: Point, p1: Point, name: str = ""):
        if p0 == p1:
            raise ValueError("degenerate segment")
        self.p0, self.p1 = p0, p1
        self.name = name
        self.dx = p1.x - p0.x
        prod = p0.y2 * p1.y2
        if is_exact(prod):
            cross = exact_sqrt(Fraction(prod))
            if cross is None:
                cross = gmpy2.sqrt(to_mpfr(Fraction(prod), DEFAULT_PRECISION + 64))
        else:
            cross = gmpy2.sqrt(prod)
        self.cross = cross  # y0 * y1

    def __repr__(self):
        return f"Segment({self.p0}, {self.p1})"

    @property
    def exact(self) -> bool:
        return self.p0.exact and self.p1.exact and is_exact(self.cross)

    def point_at(self, t) -> Point:
        if t < 0 or t > 1:
            raise OutOfRange(f"segment parameter {t} outside [0, 1]")
        if t == 0:
            return self.p0
        if t == 1:
            return self.p1
        u = 1 - t
        x = self.p0.x + t * self.dx
        y2 = u * u * self.p0.y2 + 2 * t * u * self.cross + t * t * self.p1.y2
        return Point(x, y2)

    def at_x(self, x) -> Point:
        """Point of the segment with abscissa x (the segment must not be vertical)."""
        if self.dx == 0:
            raise OutOfRange("vertical segment has no abscissa parameterization")
        return self.point_at((x - self.p0.x) / self.dx)

    def quadratic(self, s):
        """Coefficients (a, b, c) with rho(s, P(t)) = a t**2 + b t + c."""
        y0y = self.cross - self.p0.y2  # y0 (y1 - y0)
        dy2 = self.p1.y2 - 2 * self.cross + self.p0.y2  # (y1 - y0)**2
        u = s - self.p0.x
        a = self.dx * self.dx + dy2
        b = 2 * (y0y - self.dx * u)
        c = u * u + self.p0.y2
        return a, b, c

    def length_squared(self):
        return self.dx * self.dx + self.p1.y2 - 2 * self.cross + self.p0.y2

    def as_floats(self):
        return self.p0.as_floats(), self.p1.as_floats()


class ArcConstraint:
    """Arc of the circle with centre (cx, 0) and radius r, theta in [lo, hi] within [0, pi].

    point(theta) = (cx + r cos theta, r sin theta).  The arc is also its own
    single piece, so it can be used wherever a constraint is expected.
    """

    kind = "arc"

    def __init__(self, center=0, radius=1, theta=(0, "pi"), name: str = ""):
        if isinstance(center, (tuple, list)):
            cx, cy = center
            if to_fraction(cy) != 0:
                raise ValueError("arc centres must lie on the axis")
            center = cx
        self.cx = to_fraction(center)
        self.r = to_fraction(radius)
        if self.r <= 0:
            raise ValueError("radius must be positive")
        lo, hi = (Angle.parse(t) for t in theta)
        if not (0 <= lo.radians < hi.radians <= math.pi + 1e-12):
            raise ValueError("theta range must satisfy 0 <= lo < hi <= pi")
        self.theta_lo, self.theta_hi = lo, hi
        self.name = name

    def __repr__(self):
        return f"ArcConstraint(center={self.cx}, radius={self.r}, theta=[{self.theta_lo}, {self.theta_hi}])"

    @property
    def pieces(self):
        return (self,)

    @property
    def exact(self) -> bool:
        return all(
            t.pi_multiple in _RATIONAL_COS for t in (self.theta_lo, self.theta_hi)
        )

    def point_from_cos(self, c) -> Point:
        """Point whose angle has cosine c."""
        return Point(self.cx + self.r * c, self.r * self.r * (1 - c * c))

    def point_at(self, theta, bits: int = DEFAULT_PRECISION) -> Point:
        ang = Angle.parse(theta)
        eps = 1e-12
        if ang.radians < self.theta_lo.radians - eps or ang.radians > self.theta_hi.radians + eps:
            raise OutOfRange(f"angle {ang} outside [{self.theta_lo}, {self.theta_hi}]")
        c = ang.cos(bits)
        if is_exact(c):
            return self.point_from_cos(c)
        with working(bits):
            return self.point_from_cos(c)

    def as_floats(self):
        return float(self.cx), float(self.r), self.theta_lo.radians, self.theta_hi.radians


class SegmentChain:
    """Ordered list of segments; piece ids are list positions."""

    kind = "chain"

    def __init__(self, pieces, name: str = ""):
        pieces = list(pieces)
        if not pieces:
            raise ValueError("a chain needs at least one segment")
        self.pieces = tuple(p if isinstance(p, Segment) else Segment(*p) for p in pieces)
        self.name = name

    def __repr__(self):
        return f"SegmentChain({list(self.pieces)!r})"

    @property
    def exact(self) -> bool:
        return all(p.exact for p in self.pieces)


@dataclass(frozen=True)
class CandidatePoint:
    """A point of a constraint together with the piece and parameter producing it."""

    piece: int
    param: object
    point: Point


def point_at(constraint, piece: int, parameter) -> Point:
    """Evaluate piece ``piece`` of a constraint at a parameter (t on segments, theta on arcs)."""
    pieces = constraint.pieces
    if not 0 <= piece < len(pieces):
        raise OutOfRange(f"piece {piece} does not exist")
    return pieces[piece].point_at(parameter)


def at_x(constraint, piece: int, x) -> Point:
    """Point of a segment piece with the given abscissa."""
    return constraint.pieces[piece].at_x(_num(x))


# ---------------------------------------------------------------------------
# the unit triangle and its perpendicular-foot maps


def _num(x):
    return x if isinstance(x, _MPFR) else to_fraction(x)


def _keep_precision(x):
    """Context computing at least at the mantissa of x (a no-op for rationals)."""
    if isinstance(x, _MPFR):
        return working(max(x.precision, gmpy2.get_context().precision))
    return contextlib.nullcontext()


def u1(x) -> Point:
    """Point of side BC of the unit triangle whose perpendicular foot on the base is x."""
    x = _num(x)
    if x < 0 or x > 1:
        raise OutOfRange(f"u1 argument {x} outside [0, 1]")
    with _keep_precision(x):
        return Point((3 + x) / 4, 3 * (1 - x) * (1 - x) / 16)


def u2(x) -> Point:
    """Point of side AC of the unit triangle whose perpendicular foot on the base is x."""
    x = _num(x)
    if x < 0 or x > 1:
        raise OutOfRange(f"u2 argument {x} outside [0, 1]")
    with _keep_precision(x):
        return Point(x / 4, 3 * x * x / 16)


def _close(a, b) -> bool:
    if is_exact(a) and is_exact(b):
        return a == b
    scale = max(abs(a), abs(b), 1)
    bits = min(
        gmpy2.get_context().precision,
        *(v.precision for v in (a, b) if isinstance(v, _MPFR)),
    )
    return abs(a - b) <= scale * mpfr(2) ** (16 - bits)


def u1_inv(p: Point):
    """Inverse of u1; the point must lie on BC with abscissa in [3/4, 1]."""
    if not (Fraction(3, 4) <= p.x <= 1) or not _close(p.y2, 3 * (1 - p.x) * (1 - p.x)):
        raise NotOnSubarc(f"{p} is not on the image of u1")
    return 4 * p.x - 3


def u2_inv(p: Point):
    """Inverse of u2; the point must lie on AC with abscissa in [0, 1/4]."""
    if not (0 <= p.x <= Fraction(1, 4)) or not _close(p.y2, 3 * p.x * p.x):
        raise NotOnSubarc(f"{p} is not on the image of u2")
    return 4 * p.x


# ---------------------------------------------------------------------------
# built-in constraints


def semicircle() -> ArcConstraint:
    """Upper half of the circle of radius 3 about the origin."""
    return ArcConstraint(0, 3, (0, "pi"), name="semicircle")


def unit_semicircle() -> ArcConstraint:
    """Upper half of the circle of radius 1/2 about (1/2, 0), spanning the base [0, 1]."""
    return ArcConstraint(Fraction(1, 2), Fraction(1, 2), (0, "pi"), name="unit-semicircle")


def triangle() -> SegmentChain:
    """Sides AC and CB of the triangle A(-3, 0), B(3, 0), C(0, 3*sqrt(3))."""
    A, B, C = Point(Fraction(-3), Fraction(0)), Point(Fraction(3), Fraction(0)), Point(Fraction(0), Fraction(27))
    S1 = Segment(A, C, name="S1")
    S2 = Segment(C, B, name="S2")
    return SegmentChain([S1, S2], name="triangle")


def unit_triangle() -> SegmentChain:
    """Sides BC (piece 0) and AC (piece 1) of the triangle A(0, 0), B(1, 0), C(1/2, sqrt(3)/2)."""
    A, B, C = Point(Fraction(0), Fraction(0)), Point(Fraction(1), Fraction(0)), Point(Fraction(1, 2), Fraction(3, 4))
    S1 = Segment(B, C, name="S1")
    S2 = Segment(A, C, name="S2")
    return SegmentChain([S1, S2], name="unit-triangle")


BUILTIN_CONSTRAINTS = {
    "semicircle": semicircle,
    "unit-semicircle": unit_semicircle,
    "triangle": triangle,
    "unit-triangle": unit_triangle,
}
