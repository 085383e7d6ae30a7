from fractions import Fraction

import gmpy2
import pytest
from gmpy2 import mpfr
from hypothesis import given, settings
from hypothesis import strategies as st

from cquant._numbers import working
from cquant.errors import NotOnSubarc, OutOfRange
from cquant.geometry import (
    Angle,
    ArcConstraint,
    Point,
    Segment,
    at_x,
    point_at,
    semicircle,
    triangle,
    u1,
    u1_inv,
    u2,
    u2_inv,
    unit_triangle,
)
from cquant.measure import rho


def test_point_at_examples():
    assert point_at(semicircle(), 0, "pi") == Point(Fraction(-3), Fraction(0))
    assert at_x(triangle(), 0, Fraction(-9, 4)) == Point.from_xy("-9/4", "3*sqrt(3)/4")
    assert at_x(unit_triangle(), 1, Fraction(1, 8)) == Point.from_xy("1/8", "sqrt(3)/8")


def test_point_at_out_of_range():
    with pytest.raises(OutOfRange):
        point_at(triangle(), 0, Fraction(3, 2))
    with pytest.raises(OutOfRange):
        point_at(triangle(), 5, 0)
    arc = ArcConstraint(0, 1, (0, "pi/2"))
    with pytest.raises(OutOfRange):
        arc.point_at("pi")


def test_u_maps():
    assert u1(1) == Point(Fraction(1), Fraction(0))
    assert u2(0) == Point(Fraction(0), Fraction(0))
    with working(300):
        x = 2 * gmpy2.log(mpfr(2)) - 1
        p = u2(x)
        assert abs(p.x - x / 4) < mpfr(2) ** -290
        assert abs(p.y2 - 3 * x * x / 16) < mpfr(2) ** -290
    assert u1_inv(u1(Fraction(37, 100))) == Fraction(37, 100)
    assert u2_inv(u2(Fraction(37, 100))) == Fraction(37, 100)
    with pytest.raises(OutOfRange):
        u1(Fraction(3, 2))


def test_inverse_off_subsegment():
    with pytest.raises(NotOnSubarc):
        u1_inv(Point(Fraction(1, 2), Fraction(3, 4)))  # apex, abscissa < 3/4
    with pytest.raises(NotOnSubarc):
        u2_inv(Point(Fraction(1, 8), Fraction(1)))  # off the side


@settings(max_examples=50, deadline=None)
@given(st.fractions(min_value=0, max_value=1))
def test_perpendicular_feet(x):
    tri = unit_triangle()
    for p, side, lo, hi in ((u1(x), tri.pieces[0], Fraction(3, 4), 1), (u2(x), tri.pieces[1], 0, Fraction(1, 4))):
        assert lo <= p.x <= hi
        # p lies on its side ...
        d = side.p1.x - side.p0.x
        t = (p.x - side.p0.x) / d
        assert side.point_at(t) == p
        # ... and (x, 0) - p is perpendicular to the side: (x - px) dx + (0 - py) dy = 0
        # with dy**2 = 3 dx**2 and py = sqrt(3) |px - x_vertex| this reduces to rho minimality
        a, b, c = side.quadratic(x)
        assert 2 * a * t + b == 0


def test_angle_parse_and_cos():
    assert Angle.parse("pi/2").pi_multiple == Fraction(1, 2)
    assert Angle.parse(3.14159265358979).pi_multiple == 1
    assert Angle.parse("2*pi/3").cos() == Fraction(-1, 2)
    assert Angle.parse(0).cos() == 1
    assert Angle.parse(0.3).pi_multiple is None


@settings(max_examples=50, deadline=None)
@given(st.fractions(min_value=-5, max_value=5), st.fractions(min_value=0, max_value=1))
def test_segment_quadratic(s, t):
    seg = triangle().pieces[0]
    a, b, c = seg.quadratic(s)
    assert a > 0
    assert rho(s, seg.point_at(t)) == (a * t + b) * t + c


def test_segment_validation():
    p = Point(Fraction(0), Fraction(0))
    with pytest.raises(ValueError):
        Segment(p, p)
    with pytest.raises(ValueError):
        Point(Fraction(0), Fraction(-1))


def test_arc_validation():
    with pytest.raises(ValueError):
        ArcConstraint((0, 1), 1)
    with pytest.raises(ValueError):
        ArcConstraint(0, -1)
    with pytest.raises(ValueError):
        ArcConstraint(0, 1, ("pi", 0))


def test_point_strings():
    assert Point.from_xy("-9/4", "3*sqrt(3)/4").strings() == ("-9/4", "3/4*sqrt(3)")
    assert Point(Fraction(1), Fraction(0)).reflected() == Point(Fraction(-1), Fraction(0))
