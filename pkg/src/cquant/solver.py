"""Optimal constrained codebooks.

Finite measures
    The support is split into n contiguous blocks (a composition of N) and
    every block takes its own best point on its best piece.  All
    compositions are scanned, ties are kept, and each candidate codebook is
    checked for existence: n distinct points, each the unique nearest point
    of at least one atom.  Values are exact Fractions.

The reciprocal measure
    Blocks are [k, l] or the tail [m, oo).  A dynamic programme indexed by
    (number of finite blocks j, excess e) where the j blocks cover atoms
    1..j+e finds the best partition for every n up to n_max at once; block
    boundaries are limited to indices <= n + window.  On the unit triangle
    two routes are run and compared: a DP whose block cost already includes
    the best side, and the unconstrained DP followed by lifting every block
    to the side with the smaller penalty.
"""

from __future__ import annotations

import itertools
import logging
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction

from gmpy2 import mpfr

from ._numbers import DEFAULT_PRECISION, is_exact, to_mpfr, working
from .cellopt import best_cells
from .errors import NoOptimalSet, PrecisionInsufficient
from .geometry import ArcConstraint, u1, u2, unit_triangle
from .measure import BlockStats, ReciprocalGeometricMeasure, distortion
from .partition import (
    CanonicalVector,
    compositions,
    enumerate_canonical,
    strictly_owned_cells,
    voronoi_assign,
)

log = logging.getLogger(__name__)

#: largest n with a proved block pattern on the unit triangle
PROVED_RANGE = 2000
DEFAULT_WINDOW = 32
#: co-optimal partitions kept per n before giving up
MAX_CO_OPTIMA = 1024
#: above this n the voronoi recomputation is skipped in sweeps (cost ~ n**2)
CHECK_LIMIT = 400

_INF = float("inf")


# ---------------------------------------------------------------------------
# result types


@dataclass
class Optimum:
    """One optimal codebook: points in block order with their blocks and pieces."""

    points: list
    blocks: list
    labels: list
    clamped: list
    degenerate_direction: list
    piece_names: list = field(default_factory=list)

    @property
    def composition(self) -> tuple:
        return tuple(None if b is None else b - a + 1 for a, b in self.blocks)

    @property
    def canonical(self) -> CanonicalVector | None:
        if any(b is None for _, b in self.blocks):
            return None
        return CanonicalVector(self.composition, tuple(self.labels))

    def sides(self, pieces: int) -> tuple:
        return tuple(self.labels.count(i) for i in range(pieces))

    def sort_key(self):
        return tuple((float(p.x), float(p.y2)) for p in self.points)


@dataclass
class InfinitePlan:
    """Block structure of a reciprocal-measure optimum on the unit triangle."""

    n: int
    blocks: list
    sides: list
    v_unconstrained: object
    v_constrained: object
    penalty: object

    @property
    def s1_count(self) -> int:
        return self.sides.count("S1")


@dataclass
class QuantizerResult:
    n: int
    value: object
    optima: list
    existence: str = "exists"
    mode: str = "proved"
    exact: bool = True
    precision: int | None = None
    max_supported_n: int | None = None
    routes: dict = field(default_factory=dict)
    disagreement: bool = False
    plans: list = field(default_factory=list)
    pieces: int = 1
    measure_name: str = ""
    constraint_name: str = ""

    @property
    def multiplicity(self) -> int:
        return len(self.optima)

    @property
    def continuum(self) -> bool:
        """True when some optimal point may slide freely along an arc."""
        return any(any(o.degenerate_direction) for o in self.optima)

    def by_split(self) -> Counter:
        """Number of optima for each count of points per piece."""
        return Counter(o.sides(self.pieces) for o in self.optima)


# ---------------------------------------------------------------------------
# helpers


def _piece_names(constraint):
    return [getattr(p, "name", "") or f"piece{i}" for i, p in enumerate(constraint.pieces)]


def _close(a, b, tol) -> bool:
    if tol is None:
        return a == b
    return abs(a - b) <= tol


def _same_points(p, q, tol) -> bool:
    if len(p) != len(q):
        return False
    ps = sorted(p, key=lambda z: (float(z.x), float(z.y2)))
    qs = sorted(q, key=lambda z: (float(z.x), float(z.y2)))
    return all(_close(a.x, b.x, tol) and _close(a.y2, b.y2, tol) for a, b in zip(ps, qs))


def _dedupe(optima, tol):
    out = []
    for o in optima:
        if not any(_same_points(o.points, u.points, tol) for u in out):
            out.append(o)
    out.sort(key=Optimum.sort_key)
    return out


def _valid(measure, points) -> bool:
    """n distinct points, each the unique nearest point of some atom."""
    for i, p in enumerate(points):
        for q in points[i + 1:]:
            if p.x == q.x and p.y2 == q.y2:
                return False
    return all(strictly_owned_cells(measure, points))


# ---------------------------------------------------------------------------
# finite measures


class _FiniteSearch:
    """Exhaustive contiguous-partition search for one finite measure and constraint."""

    def __init__(self, measure, constraint):
        self.measure = measure
        self.constraint = constraint
        self.N = measure.size
        self.pieces = len(constraint.pieces)
        self._cells = {}
        inexact = not getattr(constraint, "exact", True)
        self.tol = None if not inexact else mpfr(2) ** -(DEFAULT_PRECISION - 16)

    def cell(self, i, j):
        """(best value, winning CellOptima) for atoms i..j."""
        key = (i, j)
        if key not in self._cells:
            self._cells[key] = best_cells(self.measure.block(i, j), self.constraint, self.tol)
        return self._cells[key]

    def piece_cost(self, i, j, piece):
        from .cellopt import minimize_on_piece

        return minimize_on_piece(self.measure.block(i, j), self.constraint.pieces[piece], piece).value

    def scan(self, n, first_parts=None):
        """Minimum over compositions and the compositions attaining it."""
        best, winners = None, []
        for comp in compositions(self.N, n):
            if first_parts is not None and comp[0] not in first_parts:
                continue
            total, start = 0, 1
            for size in comp:
                total += self.cell(start, start + size - 1)[0]
                start += size
            if best is None or (total < best and not _close(total, best, self.tol)):
                best, winners = total, [comp]
            elif _close(total, best, self.tol):
                winners.append(comp)
        return best, winners

    def candidates(self, comps):
        """Every codebook from the tied compositions, expanding piece ties
        and, for angle-free arc cells, the representative angles."""
        for comp in comps:
            blocks, start = [], 1
            for size in comp:
                blocks.append((start, start + size - 1))
                start += size
            per_block = [self.cell(a, b)[1] for a, b in blocks]
            for choice in itertools.product(*per_block):
                reps = [[o.point] + o.alternatives for o in choice]
                yield blocks, choice, reps

    def optima(self, n, comps):
        names = _piece_names(self.constraint)
        found = []
        for blocks, choice, reps in self.candidates(comps):
            for pts in itertools.product(*reps):
                pts = list(pts)
                if _valid(self.measure, pts):
                    found.append(Optimum(
                        pts, blocks, [o.piece for o in choice],
                        [o.clamped for o in choice],
                        [o.degenerate_direction for o in choice],
                        [names[o.piece] for o in choice],
                    ))
                    break
        return _dedupe(found, self.tol)

    def exists(self, n) -> bool:
        if n > self.N:
            return False
        value, comps = self.scan(n)
        return bool(self.optima(n, comps))

    def max_supported(self, upto) -> int:
        for m in range(min(upto, self.N), 0, -1):
            if self.exists(m):
                return m
        return 0


def _scan_chunk(args):
    measure, constraint, n, parts = args
    return _FiniteSearch(measure, constraint).scan(n, set(parts))


def enumeration_value(measure, constraint, n):
    """Minimum over every canonical vector with freely labelled blocks (p**n labellings)."""
    pieces = len(constraint.pieces)
    search = _FiniteSearch(measure, constraint)
    costs = {}
    best = None
    for cv in enumerate_canonical(measure.size, n, pieces, ordered=False):
        total = 0
        for (a, b), lab in zip(cv.blocks(), cv.labels):
            key = (a, b, lab)
            if key not in costs:
                costs[key] = search.piece_cost(a, b, lab)
            total += costs[key]
        if best is None or total < best:
            best = total
    return best


def finite_dp_value(measure, constraint, n):
    """Contiguous-partition DP: F[j][i] = best cost of atoms 1..i in j blocks."""
    search = _FiniteSearch(measure, constraint)
    N = measure.size
    F = [[None] * (N + 1) for _ in range(n + 1)]
    F[0][0] = 0
    for j in range(1, n + 1):
        for i in range(j, N + 1):
            best = None
            for s in range(j - 1, i):
                if F[j - 1][s] is None:
                    continue
                v = F[j - 1][s] + search.cell(s + 1, i)[0]
                if best is None or v < best:
                    best = v
            F[j][i] = best
    return F[n][N]


def solve_finite(measure, constraint, n: int, workers: int = 1, check: bool = True) -> QuantizerResult:
    """Exact constrained optimum for a finite measure.

    Raises NoOptimalSet when no n-point codebook has n positive cells; the
    exception carries the infimum and the largest n for which optima exist.
    """
    if n < 1:
        raise ValueError("n must be positive")
    search = _FiniteSearch(measure, constraint)
    N = measure.size
    if n > N:
        inf_value = search.scan(N)[0]
        raise NoOptimalSet(n, search.max_supported(N), inf_value)
    if workers > 1 and n > 1 and N - n + 1 > 1:
        firsts = list(range(1, N - n + 2))
        chunks = [firsts[i::workers] for i in range(workers)]
        chunks = [c for c in chunks if c]
        with ProcessPoolExecutor(max_workers=len(chunks)) as pool:
            parts = list(pool.map(_scan_chunk, [(measure, constraint, n, c) for c in chunks]))
        value = min(v for v, _ in parts)
        comps = sorted(c for v, cs in parts if _close(v, value, search.tol) for c in cs)
    else:
        value, comps = search.scan(n)
    optima = search.optima(n, comps)
    routes = {"enumeration": value}
    if check:
        routes["dp"] = finite_dp_value(measure, constraint, n)
        for o in optima:
            _, d = voronoi_assign(measure, o.points)
            routes.setdefault("voronoi", d)
            if not _close(d, value, search.tol):
                raise AssertionError(f"voronoi recomputation {d} differs from {value}")
        if not _close(routes["dp"], value, search.tol):
            raise AssertionError(f"DP value {routes['dp']} differs from enumeration {value}")
    if not optima:
        raise NoOptimalSet(n, search.max_supported(n - 1), value)
    return QuantizerResult(
        n, value, optima, exact=is_exact(value), routes=routes,
        pieces=len(constraint.pieces), max_supported_n=None,
        measure_name=getattr(measure, "name", ""),
        constraint_name=getattr(constraint, "name", ""),
    )


# ---------------------------------------------------------------------------
# the reciprocal measure: partition DP


class _BlockCosts:
    """Costs of blocks [s, s+L-1] and tails [m, oo) for the partition DP.

    ``constraint`` None gives the unconstrained cost Er.  Otherwise the cost
    is the best cell value over the pieces; finite blocks are solved in
    exact rationals so ties between pieces (Av = 1/2 on the unit triangle)
    are detected exactly.
    """

    def __init__(self, measure, constraint, bits, tol_bits):
        self.measure = measure
        self.constraint = constraint
        self.bits = bits
        self.tol_bits = tol_bits
        self.finite = {}  # (s, L) -> (mpfr value, winners)
        self.tails = {}

    def _round(self, v):
        return to_mpfr(v, self.bits) if isinstance(v, Fraction) else mpfr(v, self.bits)

    def fill(self, max_start, max_len):
        for s in range(1, max_start + 1):
            have = [L for L in range(1, max_len + 1) if (s, L) not in self.finite]
            if not have:
                continue
            for L, st in enumerate(self.measure.block_run(s, max_len), start=1):
                if (s, L) in self.finite:
                    continue
                self.finite[(s, L)] = self._evaluate(st, None)

    def _evaluate(self, st: BlockStats, tol):
        if self.constraint is None:
            return self._round(st.er), None
        with working(self.bits):
            value, winners = best_cells(st, self.constraint, tol)
        return self._round(value), winners

    def tail(self, m):
        if m not in self.tails:
            st = self.measure.block(m)
            tol = None
            if self.constraint is not None:
                tol = abs(st.er + st.weight) * mpfr(2) ** -self.tol_bits
            self.tails[m] = self._evaluate(st, tol)
        return self.tails[m]

    def get(self, s, L):
        if (s, L) not in self.finite:
            self.fill(s, L)
        return self.finite[(s, L)]


class PartitionDP:
    """DP over contiguous partitions of the reciprocal measure for all n <= n_max.

    F[j][e] is the least cost of j finite blocks covering atoms 1..j+e;
    V_n = min over e <= window of F[n-1][e] + cost([n+e, oo)).
    """

    def __init__(self, n_max, precision=DEFAULT_PRECISION, window=DEFAULT_WINDOW, constraint=None):
        if n_max < 1:
            raise ValueError("n must be positive")
        if window < 1:
            raise ValueError("window must be positive")
        self.n_max = n_max
        self.precision = precision
        self.window = window
        self.constraint = constraint
        self.bits = precision + 32
        self.measure = ReciprocalGeometricMeasure(self.bits)
        self.costs = _BlockCosts(self.measure, constraint, self.bits, precision - 16)
        self._run()

    def _run(self):
        W, bits = self.window, self.bits
        self.costs.fill(self.n_max + W, W + 1)
        inf = mpfr("inf")
        F = [[inf] * (W + 1) for _ in range(self.n_max)]
        F[0][0] = mpfr(0, bits)
        with working(bits):
            for j in range(1, self.n_max):
                prev, row = F[j - 1], F[j]
                for e in range(W + 1):
                    best = inf
                    for L in range(1, e + 2):
                        p = prev[e - L + 1]
                        if p == inf:
                            continue
                        v = p + self.costs.finite[(j + e - L + 1, L)][0]
                        if v < best:
                            best = v
                    row[e] = best
        self.F = F

    def value(self, n):
        W = self.window
        with working(self.bits):
            return min(self.F[n - 1][e] + self.costs.tail(n + e)[0] for e in range(W + 1))

    def tolerance(self, value):
        with working(self.bits):
            return abs(value) * mpfr(2) ** -(self.precision - 16)

    def partitions(self, n, cap=MAX_CO_OPTIMA):
        """All co-optimal partitions for n as lists of (start, end) with end None for the tail."""
        V = self.value(n)
        with working(self.bits):
            limit = V + self.tolerance(V)
        out = []
        F, W = self.F, self.window

        def rec(j, e, acc, suffix):
            if len(out) > cap:
                return
            if j == 0:
                if e == 0:
                    out.append(list(reversed(suffix)))
                return
            for L in range(1, e + 2):
                p = F[j - 1][e - L + 1]
                c = self.costs.finite[(j + e - L + 1, L)][0]
                if p + c + acc <= limit:
                    s = j + e - L + 1
                    rec(j - 1, e - L + 1, acc + c, suffix + [(s, s + L - 1)])

        with working(self.bits):
            for e in range(W + 1):
                t = self.costs.tail(n + e)[0]
                if F[n - 1][e] + t <= limit:
                    rec(n - 1, e, t, [(n + e, None)])
        if len(out) > cap:
            raise PrecisionInsufficient(
                f"more than {cap} partitions tie for n={n}; raise the precision"
            )
        return V, out

    def block_info(self, a, b):
        if b is None:
            return self.costs.tail(a)
        return self.costs.get(a, b - a + 1)

    def check_resolution(self, n, V, partitions):
        """Raise PrecisionInsufficient when a block cost is below the mantissa's reach."""
        with working(self.bits):
            floor_ = abs(V) * mpfr(2) ** -(self.precision - 24)
        for part in partitions:
            for a, b in part:
                c = self.block_info(a, b)[0]
                if 0 < c < floor_:
                    raise PrecisionInsufficient(
                        f"block [{a}, {b or 'inf'}] costs {float(c):.3e}, below the "
                        f"resolution of {self.precision}-bit values of size {float(V):.3e}"
                    )

    def argmin_blocks(self, n):
        return sorted(tuple(p) for p in self.partitions(n)[1])


def _validate_window(dp_cls_args, n_max, window, expected):
    """Rerun with a doubled window and compare argmin partitions for every n."""
    precision, constraint = dp_cls_args
    wide = PartitionDP(n_max, precision, 2 * window, constraint)
    for n in range(1, n_max + 1):
        if wide.argmin_blocks(n) != expected.argmin_blocks(n):
            return False
    return True


def _block_stats_exact_or_tail(measure, a, b):
    return measure.block_exact(a, b) if b is not None else measure.block(a)


def solve_infinite_unconstrained(n, precision=DEFAULT_PRECISION, window=DEFAULT_WINDOW, dp=None):
    """Best partition of the reciprocal measure into n blocks with no constraint.

    Returns (partition, V_n) where partition is a list of (start, end) pairs
    with end None for the final tail block.  Ties return the first partition
    in lexicographic order; ``PartitionDP.partitions`` lists all of them.
    """
    dp = dp or PartitionDP(n, precision, window)
    V, parts = dp.partitions(n)
    dp.check_resolution(n, V, parts)
    parts.sort(key=lambda p: [(a, b if b is not None else _INF) for a, b in p])
    return parts[0], mpfr(V, precision)


# ---------------------------------------------------------------------------
# the unit triangle


SIDE_NAMES = ("S1", "S2")


def _penalties(st: BlockStats):
    """(S1 penalty, S2 penalty) = (3/4 W (1-Av)**2, 3/4 W Av**2)."""
    w, a = st.weight, st.av
    return Fraction(3, 4) * w * (1 - a) * (1 - a), Fraction(3, 4) * w * a * a


def lift_to_constrained(partition, sides, precision=DEFAULT_PRECISION, measure=None):
    """Lift a partition to the unit triangle: u1(Av) for S1 blocks, u2(Av) for S2 blocks.

    Returns (points, V_c) with V_c = sum Er + 3/4 sum_S1 W (1-Av)**2 + 3/4 sum_S2 W Av**2.
    """
    bits = precision + 32
    m = measure or ReciprocalGeometricMeasure(bits)
    points, total = [], mpfr(0, bits)
    with working(bits):
        for (a, b), side in zip(partition, sides):
            st = _block_stats_exact_or_tail(m, a, b)
            p1, p2 = _penalties(st)
            if side in ("S1", 0):
                points.append(u1(st.av))
                total += _as_mpfr(st.er + p1, bits)
            else:
                points.append(u2(st.av))
                total += _as_mpfr(st.er + p2, bits)
    return points, mpfr(total, precision)


def _as_mpfr(v, bits):
    return to_mpfr(v, bits) if isinstance(v, Fraction) else mpfr(v, bits)


class InfiniteSweep:
    """Both routes for the reciprocal measure on the unit triangle, all n <= n_max."""

    def __init__(self, n_max, precision=DEFAULT_PRECISION, window=DEFAULT_WINDOW):
        self.n_max = n_max
        self.precision = precision
        self.window = window
        self.triangle = unit_triangle()
        self.uncon = PartitionDP(n_max, precision, window)
        self.pen = PartitionDP(n_max, precision, window, self.triangle)
        self.measure = self.uncon.measure

    def validate_window(self) -> bool:
        return (_validate_window((self.precision, None), self.n_max, self.window, self.uncon)
                and _validate_window((self.precision, self.triangle), self.n_max, self.window, self.pen))

    def two_stage(self, n):
        """Unconstrained optimum lifted block by block to the cheaper side."""
        V_u, parts = self.uncon.partitions(n)
        self.uncon.check_resolution(n, V_u, parts)
        bits = self.uncon.bits
        results = []
        with working(bits):
            for part in parts:
                options = []
                for a, b in part:
                    st = _block_stats_exact_or_tail(self.measure, a, b)
                    p1, p2 = _penalties(st)
                    if st.exact:
                        opts = [("S1", p1)] if p1 < p2 else [("S2", p2)] if p2 < p1 else [("S1", p1), ("S2", p2)]
                    else:
                        opts = [("S1", p1)] if p1 < p2 else [("S2", p2)]
                    options.append(opts)
                for choice in itertools.product(*options):
                    sides = [c[0] for c in choice]
                    pen = sum((_as_mpfr(c[1], bits) for c in choice), mpfr(0))
                    results.append((part, sides, V_u + pen, pen))
        best = min(r[2] for r in results)
        tol = self.pen.tolerance(best)
        return mpfr(V_u, self.precision), [r for r in results if r[2] - best <= tol]

    def penalized(self, n):
        V, parts = self.pen.partitions(n)
        self.pen.check_resolution(n, V, parts)
        out = []
        for part in parts:
            winners = [self.pen.block_info(a, b)[1] for a, b in part]
            for choice in itertools.product(*winners):
                out.append((part, choice))
        return V, out

    def solve(self, n, check=True) -> QuantizerResult:
        if not 1 <= n <= self.n_max:
            raise ValueError(f"n must lie in 1..{self.n_max}")
        with working(self.uncon.bits):
            return self._solve(n, check)

    def _solve(self, n, check):
        bits = self.uncon.bits
        V_pen, pen_opts = self.penalized(n)
        V_u, lifted = self.two_stage(n)
        V_two = lifted[0][2]
        tol = self.pen.tolerance(V_pen)
        disagree = abs(V_pen - V_two) > tol
        if disagree:
            log.warning("n=%d: penalized DP %s and two-stage route %s disagree", n, V_pen, V_two)
        V = min(V_pen, V_two)
        optima, plans = [], []
        if V_pen - V <= tol:
            for part, choice in pen_opts:
                pts = [c.point for c in choice]
                optima.append(Optimum(pts, part, [c.piece for c in choice],
                                      [c.clamped for c in choice], [False] * n,
                                      [SIDE_NAMES[c.piece] for c in choice]))
        if V_two - V <= tol:
            for part, sides, vc, pen in lifted:
                pts, _ = lift_to_constrained(part, sides, self.precision, self.measure)
                optima.append(Optimum(pts, part, [SIDE_NAMES.index(s) for s in sides],
                                      [False] * n, [False] * n, list(sides)))
                plans.append(InfinitePlan(n, part, sides, V_u, mpfr(vc, self.precision),
                                          mpfr(pen, self.precision)))
        pt_tol = mpfr(2) ** -(self.precision - 16)
        optima = _dedupe(optima, pt_tol)
        checks = {"penalized": mpfr(V_pen, self.precision), "two_stage": mpfr(V_two, self.precision),
                  "unconstrained": V_u}
        if check and n <= CHECK_LIMIT:
            valid = []
            for o in optima:
                if not _valid(self.measure, o.points):
                    continue
                d = distortion(self.measure, o.points, bits)
                checks.setdefault("voronoi", mpfr(d, self.precision))
                if abs(d - V) > 4 * abs(V) * mpfr(2) ** -self.precision:
                    raise AssertionError(f"voronoi recomputation {d} differs from {V}")
                valid.append(o)
            if not valid:
                raise NoOptimalSet(n, n - 1, mpfr(V, self.precision))
            optima = valid
        return QuantizerResult(
            n, mpfr(V, self.precision), optima, exact=False, precision=self.precision,
            mode="proved" if n <= PROVED_RANGE else "conjectural",
            routes=checks, disagreement=disagree, plans=plans, pieces=2,
            measure_name="reciprocal", constraint_name="unit-triangle",
        )


def solve_infinite_constrained(n, precision=DEFAULT_PRECISION, window=DEFAULT_WINDOW, check=True):
    """Constrained optimum of the reciprocal measure on the unit triangle."""
    return InfiniteSweep(n, precision, window).solve(n, check)


# ---------------------------------------------------------------------------
# the reciprocal measure on other constraints


def solve_infinite(constraint, n, precision=DEFAULT_PRECISION, window=DEFAULT_WINDOW, check=True):
    """Constrained optimum of the reciprocal measure on an arc or a chain.

    The unit triangle runs both routes; other constraints use the
    side-aware DP alone.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if not isinstance(constraint, ArcConstraint) and _is_unit_triangle(constraint):
        return solve_infinite_constrained(n, precision, window, check)
    if isinstance(constraint, ArcConstraint) and n >= 3:
        # Every block's best point is an end of the arc, or any point when its
        # mean sits at the centre (an atom there is equidistant from every arc
        # point).  Three or more distinct points can never all own an atom.
        dp = PartitionDP(2, precision, window, constraint)
        supported = 2 if _infinite_exists(dp, constraint, 2) else 1
        raise NoOptimalSet(n, supported, mpfr(dp.value(2), precision))
    dp = PartitionDP(n, precision, window, constraint)
    V, optima = _infinite_optima(dp, constraint, n)
    if not optima:
        raise NoOptimalSet(n, n - 1, mpfr(V, precision))
    return QuantizerResult(
        n, mpfr(V, precision), optima, exact=False, precision=precision,
        pieces=len(constraint.pieces), measure_name="reciprocal",
        constraint_name=getattr(constraint, "name", ""),
        routes={"dp": mpfr(V, precision)},
    )


def _is_unit_triangle(constraint) -> bool:
    ref = unit_triangle()
    if len(constraint.pieces) != 2:
        return False
    for a, b in zip(constraint.pieces, ref.pieces):
        if {a.p0, a.p1} != {b.p0, b.p1}:
            return False
    return True


def _infinite_optima(dp, constraint, n):
    V, parts = dp.partitions(n)
    dp.check_resolution(n, V, parts)
    names = _piece_names(constraint)
    found = []
    for part in parts:
        winners = [dp.block_info(a, b)[1] for a, b in part]
        for choice in itertools.product(*winners):
            reps = [[o.point] + o.alternatives for o in choice]
            for pts in itertools.product(*reps):
                pts = list(pts)
                if _valid(dp.measure, pts):
                    found.append(Optimum(pts, part, [o.piece for o in choice],
                                         [o.clamped for o in choice],
                                         [o.degenerate_direction for o in choice],
                                         [names[o.piece] for o in choice]))
                    break
    return V, _dedupe(found, mpfr(2) ** -(dp.precision - 16))


def _infinite_exists(dp, constraint, n) -> bool:
    return bool(_infinite_optima(dp, constraint, n)[1])


# ---------------------------------------------------------------------------
# dispatch


def solve(measure, constraint, n, precision=DEFAULT_PRECISION, window=DEFAULT_WINDOW,
          workers=1, check=True) -> QuantizerResult:
    """Solve any supported (measure, constraint, n) instance."""
    if measure.is_finite:
        return solve_finite(measure, constraint, n, workers=workers, check=check)
    return solve_infinite(constraint, n, precision, window, check)


def sweep_infinite(n_max, precision=DEFAULT_PRECISION, window=DEFAULT_WINDOW, check=True):
    """Results for n = 1..n_max on the unit triangle from a single pair of DP tables."""
    sweep = InfiniteSweep(n_max, precision, window)
    return sweep, [sweep.solve(n, check) for n in range(1, n_max + 1)]


def predicted_blocks(n):
    """The block structure predicted by the block pattern for the unconstrained optimum."""
    if n <= 5:
        return [(k, k) for k in range(1, n)] + [(n, None)]
    return [(k, k) for k in range(1, n - 1)] + [(n - 1, n), (n + 1, None)]
