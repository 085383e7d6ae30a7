import random
from fractions import Fraction

import gmpy2
import pytest
from gmpy2 import mpfr
from hypothesis import given, settings
from hypothesis import strategies as st

from cquant._numbers import working
from cquant.errors import EmptyCodebook
from cquant.geometry import Point, semicircle, u1, u2
from cquant.measure import (
    FiniteDiscreteMeasure,
    ReciprocalGeometricMeasure,
    av,
    distortion,
    er,
    nonuniform_seven,
    rho,
    uniform_seven,
    weight,
)


def test_rho_examples():
    assert rho(1, Point(Fraction(1), Fraction(0))) == 0
    assert rho(3, Point(Fraction(-3), Fraction(0))) == 36
    circle = semicircle()
    for theta in ("0", "pi/3", "pi/2", "2*pi/3", "pi"):
        assert rho(0, circle.point_at(theta)) == 9


def test_finite_measure_validation():
    with pytest.raises(ValueError):
        FiniteDiscreteMeasure([0, 0], ["1/2", "1/2"])
    with pytest.raises(ValueError):
        FiniteDiscreteMeasure([0, 1], ["1/2", "1/3"])
    with pytest.raises(ValueError):
        FiniteDiscreteMeasure([0, 1], ["1", "0"])
    with pytest.raises(ValueError):
        FiniteDiscreteMeasure([], [])


def test_builtin_measures_sum_to_one():
    assert sum(uniform_seven().weights) == 1
    assert sum(nonuniform_seven().weights) == 1
    assert nonuniform_seven().weights[0] == Fraction(1, 2)


def test_distortion_examples():
    circle = semicircle()
    for theta in ("0", "pi/3", "pi/2", "pi"):
        assert distortion(uniform_seven(), [circle.point_at(theta)]) == 13
    with working(256):
        assert abs(distortion(uniform_seven(), [circle.point_at("pi/4")]) - 13) < mpfr(2) ** -240
    lifted = [Point(Fraction(s), Fraction(0)) for s in range(-3, 4)]
    assert distortion(uniform_seven(), lifted) == 0
    ends = [Point(Fraction(-3), Fraction(0)), Point(Fraction(3), Fraction(0))]
    assert distortion(nonuniform_seven(), ends) == Fraction(93, 64)


def test_distortion_empty_codebook():
    with pytest.raises(EmptyCodebook):
        distortion(uniform_seven(), [])


def test_series_examples():
    m = ReciprocalGeometricMeasure(256)

    with working(256):
        log2 = gmpy2.log(mpfr(2))
        assert abs(av(1, None, 256) - log2) < mpfr(2) ** -250
        assert abs(av(2, None, 256) - (2 * log2 - 1)) < mpfr(2) ** -250
        ref = (gmpy2.const_pi() ** 2 - 18 * log2**2) / 12
        assert abs(er(1, None, 256) - ref) < mpfr(2) ** -250
    for k in (1, 4, 9):
        assert av(k, k) == Fraction(1, k)
        assert er(k, k) == 0
    assert m.block(3).unbounded


@settings(max_examples=40, deadline=None)
@given(st.integers(1, 40), st.integers(0, 12))
def test_finite_block_identities(k, extra):
    m = ReciprocalGeometricMeasure(128)
    ell = k + extra
    b = m.block_exact(k, ell)
    assert b.weight == Fraction(1, 2 ** (k - 1)) - Fraction(1, 2**ell)
    assert b.weight * b.av == sum(Fraction(1, 2**n * n) for n in range(k, ell + 1))
    second = sum(Fraction(1, 2**n * n * n) for n in range(k, ell + 1))
    assert b.er == second - b.weight * b.av * b.av
    assert (b.er == 0) == (k == ell)
    assert 0 < b.av <= 1


def test_tail_weight_and_positivity():
    m = ReciprocalGeometricMeasure(256)
    with working(300):
        for k in (1, 3, 20, 200):
            b = m.block(k)
            assert b.weight == mpfr(2) ** (1 - k)
            assert b.er > 0
            assert 0 < b.av <= 1


def test_weight_helper():
    assert weight(1, 1) == Fraction(1, 2)


@settings(max_examples=30, deadline=None)
@given(st.lists(st.tuples(st.integers(-6, 6), st.integers(0, 6)), min_size=1, max_size=5),
       st.tuples(st.integers(-6, 6), st.integers(0, 6)))
def test_distortion_monotone_when_adding_points(pts, extra):
    m = nonuniform_seven()
    points = [Point(Fraction(x), Fraction(y)) for x, y in pts]
    more = points + [Point(Fraction(extra[0]), Fraction(extra[1]))]
    assert distortion(m, more) <= distortion(m, points)


def test_reciprocal_distortion_against_direct_sum():
    import mpmath

    mpmath.mp.prec = 300
    m = ReciprocalGeometricMeasure(256)
    rng = random.Random(3)
    for _ in range(5):
        pts = [u1(Fraction(rng.randint(0, 20), 20)), u2(Fraction(rng.randint(1, 20), 20)),
               Point(Fraction(rng.randint(-5, 5), 10), Fraction(rng.randint(0, 9), 100))]
        got = distortion(m, pts, 256)
        ref = mpmath.fsum(
            mpmath.mpf(2) ** -n * min((mpmath.mpf(1) / n - mpmath.mpf(p.x.numerator) / p.x.denominator) ** 2
                                      + mpmath.mpf(p.y2.numerator) / p.y2.denominator for p in pts)
            for n in range(1, 400)
        )
        assert abs(mpmath.mpf(str(got)) - ref) < mpmath.mpf(2) ** -240


def test_reciprocal_distortion_single_point():
    # one point at the origin: sum 2**-n / n**2 = Li2(1/2)
    m = ReciprocalGeometricMeasure(256)
    d = distortion(m, [Point(Fraction(0), Fraction(0))], 256)
    with working(256):
        log2 = gmpy2.log(mpfr(2))
        ref = gmpy2.const_pi() ** 2 / 12 - log2**2 / 2
        assert abs(d - ref) < mpfr(2) ** -250
