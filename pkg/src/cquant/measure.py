"""Discrete probability measures on the real axis.

Two kinds of measure are supported:

* ``FiniteDiscreteMeasure``: finitely many atoms with rational weights.  Every
  quantity is an exact ``Fraction``.
* ``ReciprocalGeometricMeasure``: mass 2**-k at 1/k for every k >= 1.  Block
  statistics for finite blocks are computed exactly and rounded once; tails
  [k, oo) use the closed forms for sum x**n/n and sum x**n/n**2 at x = 1/2,
  evaluated at an internally raised precision so the subtraction of the
  partial sum does not eat the mantissa.

A block is a run of consecutive atoms, numbered from 1.  ``BlockStats`` holds
its total weight, conditional mean ``av`` and conditional error
``er = sum w (s - av)**2``.
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from gmpy2 import mpfr, mpq

from ._numbers import DEFAULT_PRECISION, constants, to_fraction, working
from .errors import EmptyCodebook

INF = math.inf

#: hard cap on the number of atoms summed explicitly by ``distortion``
MAX_EXPLICIT_ATOMS = 10**6


def _is_unbounded(ell) -> bool:
    if ell is None:
        return True
    if isinstance(ell, str):
        return ell.strip().lower() in ("inf", "infinity", "oo", "∞")
    return isinstance(ell, float) and math.isinf(ell) and ell > 0


def _coords(p):
    """(x, y**2) of a planar point given as a Point-like object or an (x, y) pair."""
    if hasattr(p, "y2"):
        return p.x, p.y2
    x, y = p
    return x, y * y


def rho(x, p):
    """Squared distance from the axis point (x, 0) to the planar point p."""
    px, py2 = _coords(p)
    d = x - px
    return d * d + py2


@dataclass(frozen=True)
class BlockStats:
    """Weight, conditional mean and conditional error of a block of atoms.

    ``ell`` is None for an unbounded block [k, oo).  ``exact`` is True when the
    three numbers are Fractions.
    """

    k: int
    ell: int | None
    weight: object
    av: object
    er: object
    exact: bool = False

    @property
    def unbounded(self) -> bool:
        return self.ell is None

    @property
    def size(self):
        return INF if self.ell is None else self.ell - self.k + 1

    def label(self) -> str:
        if self.ell is None:
            return f"[{self.k},inf]"
        if self.ell == self.k:
            return f"{{{self.k}}}"
        return f"[{self.k},{self.ell}]"

    def cost_at(self, point):
        """Distortion of the whole block when every atom goes to ``point``.

        Uses sum w rho(s, p) = er + weight * rho(av, p).
        """
        return self.er + self.weight * rho(self.av, point)


class FiniteDiscreteMeasure:
    """Atoms s_1 < ... < s_N with positive rational weights summing to one."""

    is_finite = True

    def __init__(self, support: Sequence, weights: Sequence, name: str = ""):
        support = [to_fraction(s) for s in support]
        weights = [to_fraction(w) for w in weights]
        if not support:
            raise ValueError("a measure needs at least one atom")
        if len(support) != len(weights):
            raise ValueError("support and weights differ in length")
        if any(b <= a for a, b in zip(support, support[1:])):
            raise ValueError("support must be strictly increasing")
        if any(w <= 0 for w in weights):
            raise ValueError("weights must be positive")
        if sum(weights) != 1:
            raise ValueError(f"weights sum to {sum(weights)}, not 1")
        self.support = tuple(support)
        self.weights = tuple(weights)
        self.name = name
        # prefix sums of w, w*s, w*s**2 for O(1) block statistics
        c0, c1, c2 = [Fraction(0)], [Fraction(0)], [Fraction(0)]
        for s, w in zip(support, weights):
            c0.append(c0[-1] + w)
            c1.append(c1[-1] + w * s)
            c2.append(c2[-1] + w * s * s)
        self._cums = (c0, c1, c2)

    @property
    def size(self) -> int:
        return len(self.support)

    def __len__(self):
        return len(self.support)

    def __repr__(self):
        tag = f" {self.name!r}" if self.name else ""
        return f"<FiniteDiscreteMeasure{tag} N={self.size}>"

    def atoms(self):
        return list(zip(self.support, self.weights))

    def atom(self, i: int):
        """(abscissa, weight) of atom i (1-based)."""
        return self.support[i - 1], self.weights[i - 1]

    def block(self, k: int, ell=None) -> BlockStats:
        """Statistics of atoms k..ell inclusive (1-based); ell defaults to N."""
        N = self.size
        if ell is None or _is_unbounded(ell):
            ell = N
        if not 1 <= k <= ell <= N:
            raise ValueError(f"block [{k}, {ell}] outside 1..{N}")
        c0, c1, c2 = self._cums
        w = c0[ell] - c0[k - 1]
        m1 = c1[ell] - c1[k - 1]
        m2 = c2[ell] - c2[k - 1]
        av = m1 / w
        return BlockStats(k, ell, w, av, m2 - m1 * av, exact=True)

    block_exact = block


class ReciprocalGeometricMeasure:
    """The measure with mass 2**-k at the point 1/k, k = 1, 2, ...

    ``precision`` is the mantissa (bits) of the values returned by ``block``.
    """

    is_finite = False
    size = None
    name = "reciprocal"

    def __init__(self, precision: int = DEFAULT_PRECISION):
        if precision < 24:
            raise ValueError("precision must be at least 24 bits")
        self.precision = int(precision)
        self._lock = threading.Lock()
        # _s1[k] = sum_{n<k} 2**-n / n and _s2[k] = sum_{n<k} 2**-n / n**2, exact
        self._s1 = [mpq(0), mpq(0)]
        self._s2 = [mpq(0), mpq(0)]

    def __repr__(self):
        return f"<ReciprocalGeometricMeasure precision={self.precision}>"

    def with_precision(self, precision: int) -> "ReciprocalGeometricMeasure":
        return ReciprocalGeometricMeasure(precision)

    def atom(self, i: int):
        return Fraction(1, i), Fraction(1, 2**i)

    def _prefix(self, k: int):
        s1, s2 = self._s1, self._s2
        if k >= len(s1):
            with self._lock:
                n = len(s1) - 1
                a, b = s1[-1], s2[-1]
                while n < k:
                    t = mpq(1, (1 << n) * n)
                    a = a + t
                    b = b + t / n
                    n += 1
                    s1.append(a)
                    s2.append(b)
        return s1[k], s2[k]

    def tail_bits(self, k: int) -> int:
        """Working precision for the tail [k, oo).

        The closed-form tail loses about k bits to the partial-sum subtraction
        and about 4 log2(k) more when forming er from the raw moments.
        """
        return self.precision + k + 4 * k.bit_length() + 32

    def tail_moments(self, k: int):
        """(W, M1, M2) of [k, oo) as mpfr values at ``tail_bits(k)`` bits."""
        s1, s2 = self._prefix(k)
        bits = self.tail_bits(k)
        log2, _pi, li2 = constants(bits)
        with working(bits):
            m1 = log2 - mpfr(s1)
            m2 = li2 - mpfr(s2)
            w = mpfr(2) ** (1 - k)
        return w, m1, m2

    def block_exact(self, k: int, ell: int) -> BlockStats:
        """Exact rational statistics of the finite block [k, ell]."""
        if not 1 <= k <= ell:
            raise ValueError(f"invalid block [{k}, {ell}]")
        return self.block_run(k, ell - k + 1)[-1]

    def block_run(self, k: int, length: int) -> list:
        """Exact statistics of [k, k], [k, k+1], ..., [k, k+length-1]."""
        # sums scaled by 2**k keep the rationals small
        w = m1 = m2 = Fraction(0)
        scale = Fraction(1, 2**k)
        out = []
        for n in range(k, k + length):
            t = Fraction(1, 2 ** (n - k))
            w += t
            m1 += t / n
            m2 += t / (n * n)
            av = m1 / w
            out.append(BlockStats(k, n, w * scale, av, (m2 - m1 * av) * scale, exact=True))
        return out

    def block(self, k: int, ell=None) -> BlockStats:
        """Statistics of [k, ell] (ell None or inf for the tail) at ``precision`` bits."""
        if k < 1:
            raise ValueError("blocks start at index 1")
        bits = self.precision
        if not _is_unbounded(ell):
            ell = int(ell)
            ex = self.block_exact(k, ell)
            return BlockStats(
                k, ell, _round(ex.weight, bits), _round(ex.av, bits), _round(ex.er, bits)
            )
        w, m1, m2 = self.tail_moments(k)
        with working(self.tail_bits(k)):
            av = m1 / w
            er = m2 - m1 * av
        return BlockStats(k, None, mpfr(w, bits), mpfr(av, bits), mpfr(er, bits))


def _round(q: Fraction, bits: int):
    return mpfr(mpq(q.numerator, q.denominator), bits)


def uniform_seven() -> FiniteDiscreteMeasure:
    """Uniform measure on {-3, ..., 3}."""
    return FiniteDiscreteMeasure(range(-3, 4), [Fraction(1, 7)] * 7, name="uniform")


def nonuniform_seven() -> FiniteDiscreteMeasure:
    """Mass 2**-(4+j) at j for j = -3..2 and 1/64 at 3."""
    weights = [Fraction(1, 2 ** (4 + j)) for j in range(-3, 3)] + [Fraction(1, 64)]
    return FiniteDiscreteMeasure(range(-3, 4), weights, name="nonuniform")


BUILTIN_MEASURES = {
    "uniform": uniform_seven,
    "nonuniform": nonuniform_seven,
    "reciprocal": ReciprocalGeometricMeasure,
}


def _measure_for(precision):
    return ReciprocalGeometricMeasure(precision or DEFAULT_PRECISION)


def weight(k: int, ell=None, precision: int | None = None):
    """Mass of [k, ell] under the reciprocal measure (exact for finite ell)."""
    if _is_unbounded(ell):
        return Fraction(2, 2**k)
    return Fraction(2, 2**k) - Fraction(1, 2 ** int(ell))


def av(k: int, ell=None, precision: int | None = None):
    """Conditional mean of 1/n over the block [k, ell] of the reciprocal measure.

    Exact (a Fraction) for finite ell; an mpfr for the tail.
    """
    m = _measure_for(precision)
    return m.block(k).av if _is_unbounded(ell) else m.block_exact(k, int(ell)).av


def er(k: int, ell=None, precision: int | None = None):
    """Conditional error of the block [k, ell] of the reciprocal measure (exact for finite ell)."""
    m = _measure_for(precision)
    return m.block(k).er if _is_unbounded(ell) else m.block_exact(k, int(ell)).er


# ---------------------------------------------------------------------------
# distortion


def _stable_index(points) -> int:
    """Index K such that every atom 1/n with n >= K has the same nearest point.

    rho(s, p) - rho(s, q) = |p|**2 - |q|**2 - 2 s (p.x - q.x) is linear in s.
    The point nearest to (s, 0) for small s > 0 minimises |p|**2 and, among
    those, maximises p.x; it stays nearest until the first positive root of
    its difference with another point.
    """
    coords = [_coords(p) for p in points]
    wx, wy2 = min(coords, key=lambda c: (c[0] * c[0] + c[1], -c[0]))
    w_norm = wx * wx + wy2
    smallest = None
    for qx, qy2 in coords:
        dx = wx - qx
        if dx == 0:
            continue
        root = (w_norm - qx * qx - qy2) / (2 * dx)
        if root > 0 and (smallest is None or root < smallest):
            smallest = root
    if smallest is None:
        return 1
    k = int(math.floor(1 / smallest)) + 2
    return min(k, MAX_EXPLICIT_ATOMS)


def _nearest(x, points):
    best, best_d = 0, None
    for i, p in enumerate(points):
        d = rho(x, p)
        if best_d is None or d < best_d:
            best, best_d = i, d
    return best, best_d


def distortion(measure, points, precision: int | None = None):
    """Expected squared distance from the measure to its nearest point in ``points``.

    Exact for finite measures with rational points.  For the reciprocal measure
    the atoms 1/n with n < K are summed one by one, where K is the index after
    which the nearest point no longer changes, and the remainder is closed with
    the tail statistics.
    """
    points = list(points)
    if not points:
        raise EmptyCodebook("distortion of an empty codebook is undefined")
    if measure.is_finite:
        return sum((w * _nearest(s, points)[1] for s, w in measure.atoms()), Fraction(0))
    bits = (precision or measure.precision) + 32
    m = measure if measure.precision >= bits else ReciprocalGeometricMeasure(bits)
    K = _stable_index(points)
    with working(bits):
        total = mpfr(0)
        for n in range(1, K):
            total += mpfr(2) ** -n * _nearest(mpq(1, n), points)[1]
        # the nearest point for small s: the tail shares it
        tail = m.block(K)
        j = _nearest(mpq(1, K), points)[0]
        total += tail.cost_at(points[j])
    return mpfr(total, precision or measure.precision)
