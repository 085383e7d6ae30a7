"""Scalar parsing, exact formatting and multiprecision helpers."""

from __future__ import annotations

import math
import re
from fractions import Fraction
from functools import lru_cache

import gmpy2
from gmpy2 import mpfr

DEFAULT_PRECISION = 256
_MPQ = type(gmpy2.mpq(0))
LOG10_2 = math.log10(2)

_SQRT_RE = re.compile(
    r"^\s*(?P<coef>[-+]?[0-9./]+)?\s*\*?\s*sqrt\(\s*(?P<rad>[0-9./]+)\s*\)"
    r"\s*(?:/\s*(?P<den>[0-9]+))?\s*$"
)


def to_fraction(value) -> Fraction:
    """Convert an int, Fraction, float or string ("p/q", "0.25") to an exact Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not scalars")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, float):
        if not math.isfinite(value):
            raise ValueError(f"non-finite scalar {value!r}")
        return Fraction(repr(value))
    if isinstance(value, str):
        return Fraction(value.strip())
    if isinstance(value, _MPQ):
        return Fraction(int(value.numerator), int(value.denominator))
    raise TypeError(f"cannot interpret {value!r} as a rational scalar")


def parse_ordinate_squared(value) -> Fraction:
    """Return y**2 for a nonnegative ordinate given as a rational or as "c*sqrt(r)/d".

    Ordinates are stored squared so that points such as (0, 3*sqrt(3)) stay exact.
    """
    if isinstance(value, str):
        m = _SQRT_RE.match(value)
        if m:
            coef = Fraction(m.group("coef")) if m.group("coef") not in (None, "+") else Fraction(1)
            if m.group("coef") == "-":
                coef = Fraction(-1)
            rad = Fraction(m.group("rad"))
            den = Fraction(int(m.group("den"))) if m.group("den") else Fraction(1)
            if coef < 0:
                raise ValueError(f"ordinate {value!r} is negative")
            return coef * coef * rad / (den * den)
    y = to_fraction(value)
    if y < 0:
        raise ValueError(f"ordinate {value!r} is negative")
    return y * y


def exact_sqrt(q: Fraction) -> Fraction | None:
    """Square root of a nonnegative rational when it is rational, else None."""
    if q < 0:
        return None
    a, b = math.isqrt(q.numerator), math.isqrt(q.denominator)
    if a * a == q.numerator and b * b == q.denominator:
        return Fraction(a, b)
    return None


def _square_part(m: int, limit: int = 10**5) -> tuple[int, int]:
    """Split m = s**2 * r with r free of prime squares below ``limit``."""
    s, r = 1, m
    p = 2
    while p * p <= r and p < limit:
        while r % (p * p) == 0:
            r //= p * p
            s *= p
        p += 1 if p == 2 else 2
    return s, r


def surd_form(y2: Fraction) -> tuple[Fraction, int]:
    """Write sqrt(y2) as coef * sqrt(radicand) with a squarefree integer radicand."""
    num = y2.numerator * y2.denominator
    s, r = _square_part(num)
    return Fraction(s, y2.denominator), r


def format_rational(q: Fraction) -> str:
    q = to_fraction(q)
    return str(q.numerator) if q.denominator == 1 else f"{q.numerator}/{q.denominator}"


def format_ordinate(y2: Fraction) -> str:
    """Exact string for sqrt(y2), e.g. "3/8*sqrt(3)"."""
    if y2 == 0:
        return "0"
    coef, rad = surd_form(y2)
    if rad == 1:
        return format_rational(coef)
    if coef == 1:
        return f"sqrt({rad})"
    return f"{format_rational(coef)}*sqrt({rad})"


def digits_for(bits: int) -> int:
    """Decimal digits carried by a mantissa of ``bits`` bits."""
    return max(1, int(bits * LOG10_2))


def format_decimal(x, digits: int) -> str:
    """Decimal string with ``digits`` significant digits for Fractions, floats or mpfr."""
    if isinstance(x, float):
        return f"{x:.{min(digits, 17)}g}"
    if isinstance(x, (Fraction, int)):
        x = to_mpfr(Fraction(x), int(digits / LOG10_2) + 16)
    elif not isinstance(x, type(mpfr(0))):
        x = mpfr(x, int(digits / LOG10_2) + 16)
    return format(x, f".{digits}g")


def working(bits: int):
    """Context manager setting the mpfr working precision for the current thread."""
    return gmpy2.context(precision=bits)


def to_mpfr(x, bits: int):
    """Round a Fraction, int, float or mpfr to an mpfr of ``bits`` bits."""
    if isinstance(x, Fraction):
        x = gmpy2.mpq(x.numerator, x.denominator)
    return mpfr(x, bits)


def exponent(x) -> int:
    """Binary exponent e with 2**(e-1) <= |x| < 2**e (0 for x == 0)."""
    if x == 0:
        return 0
    return int(gmpy2.get_exp(mpfr(x)))


def ulp(x, bits: int):
    """Unit in the last place of x at a mantissa of ``bits`` bits."""
    with working(bits + 8):
        return mpfr(2) ** (exponent(x) - bits)


@lru_cache(maxsize=64)
def constants(bits: int):
    """(log 2, pi, Li2(1/2)) at ``bits`` bits; Li2(1/2) from pi**2/12 - log(2)**2/2."""
    with working(bits + 16):
        log2 = gmpy2.const_log2()
        pi = gmpy2.const_pi()
        li2_half = pi * pi / 12 - log2 * log2 / 2
        return mpfr(log2, bits), mpfr(pi, bits), mpfr(li2_half, bits)


def is_exact(x) -> bool:
    return isinstance(x, (Fraction, int))
