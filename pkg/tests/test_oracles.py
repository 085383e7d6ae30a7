"""Independent reference values, computed without the library's series code.

Every expected number here is either a frozen literal or recomputed with
mpmath (direct summation, polylog) so that a regression in the closed-form
tails cannot hide behind itself.
"""

from fractions import Fraction

import mpmath
import pytest
from gmpy2 import mpfr

from cquant._numbers import working
from cquant.measure import ReciprocalGeometricMeasure, av, er, weight

mpmath.mp.prec = 300

# frozen values (40 significant digits)
LOG2 = "0.6931471805599453094172321214581765680755"
ER_1_INF = "0.1017875125468110812355537938330151370136"
V1_SEMICIRCLE = "0.1959461653451218870681920772433"
V2_SEMICIRCLE = "0.0822405264650125059026563201596"
V1_TRIANGLE = "0.172406502145544185610032506390"
CLAIM_2000 = "1.444419023937249609981175e-615"


def _direct(k, terms):
    """(W, Av, Er) of [k, k + terms) by direct summation in mpmath."""
    w = m1 = m2 = mpmath.mpf(0)
    for n in range(k, k + terms):
        t = mpmath.mpf(2) ** -n
        w += t
        m1 += t / n
        m2 += t / n**2
    a = m1 / w
    return w, a, m2 - m1 * a


def _close(x, ref, rel):
    return abs(mpmath.mpf(str(x)) - mpmath.mpf(ref)) <= rel * abs(mpmath.mpf(ref))


def test_frozen_log2_matches_tail_mean():
    assert _close(av(1, None, 256), LOG2, mpmath.mpf(10) ** -39)


def test_frozen_er_closed_form():
    ref = (mpmath.pi**2 - 18 * mpmath.log(2) ** 2) / 12
    assert abs(ref - mpmath.mpf(ER_1_INF)) < mpmath.mpf(10) ** -39
    assert _close(er(1, None, 256), ER_1_INF, mpmath.mpf(10) ** -38)


def test_dilog_half_matches_polylog():
    li2 = mpmath.polylog(2, mpmath.mpf(1) / 2)
    ref = mpmath.pi**2 / 12 - mpmath.log(2) ** 2 / 2
    assert abs(li2 - ref) < mpmath.mpf(2) ** -290


@pytest.mark.parametrize("k", [1, 2, 5, 17])
def test_tail_second_moment_matches_polylog(k):
    m = ReciprocalGeometricMeasure(256)
    st = m.block(k)
    partial = mpmath.fsum(mpmath.mpf(2) ** -n / n**2 for n in range(1, k))
    m2 = mpmath.polylog(2, mpmath.mpf(1) / 2) - partial
    w = mpmath.mpf(2) ** (1 - k)
    m1 = mpmath.log(2) - mpmath.fsum(mpmath.mpf(2) ** -n / n for n in range(1, k))
    ref_er = m2 - m1 * m1 / w
    assert abs(mpmath.mpf(str(st.er)) - ref_er) <= abs(ref_er) * mpmath.mpf(2) ** -240


@pytest.mark.parametrize("T", [50, 100, 200])
def test_tail_mean_against_truncated_sum(T):
    # the dropped terms of sum 2**-n / n beyond T are below 2**-T
    for k in (1, 2, 7):
        w, a, _ = _direct(k, T - k + 1)
        got = mpmath.mpf(str(av(k, None, 256)))
        assert abs(got - a) <= 4 * mpmath.mpf(2) ** -T * 2**k


def test_er_2_inf_against_300_terms():
    _, _, e = _direct(2, 300)
    assert abs(mpmath.mpf(str(er(2, None, 256))) - e) < mpmath.mpf(2) ** -250


def test_weights_exact():
    assert weight(3, 5) == Fraction(1, 4) - Fraction(1, 32)
    with working(300):
        assert weight(4, None, 256) == mpfr(2) ** -3


def test_semicircle_closed_forms_frozen():
    L = mpmath.log(2)
    v1 = (mpmath.pi**2 - 6 * (-2 + L**2 + mpmath.log(16))) / 12
    v2 = (mpmath.pi**2 - 6 - 6 * L**2 - 12 * L + 6 * mpmath.log(4)) / 12
    assert abs(v1 - mpmath.mpf(V1_SEMICIRCLE)) < mpmath.mpf(10) ** -30
    assert abs(v2 - mpmath.mpf(V2_SEMICIRCLE)) < mpmath.mpf(10) ** -30


def test_triangle_one_point_closed_form_frozen():
    L = mpmath.log(2)
    ref = (mpmath.pi**2 - 9 * (-1 + L**2 + mpmath.log(4))) / 12
    assert abs(ref - mpmath.mpf(V1_TRIANGLE)) < mpmath.mpf(10) ** -29


def test_two_thousand_block_sum_direct():
    mpmath.mp.prec = 2600
    try:
        _, _, e_pair = _direct(1999, 2)
        _, _, e_tail = _direct(2001, 400)
        total = e_pair + e_tail
        assert abs(total - mpmath.mpf(CLAIM_2000)) < mpmath.mpf(10) ** -636
    finally:
        mpmath.mp.prec = 300
