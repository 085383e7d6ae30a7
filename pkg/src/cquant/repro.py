"""Reference cases: reference values and multiplicities, rerun on demand.

Each :class:`ReproCase` holds one expected value, stored exactly as printed:
a rational ``"p/q"`` is compared for exact equality, and a decimal is
compared only to the digits it shows (the computed value is rounded
half-even to the same number of significant digits).  Where a multiplicity
is listed the count of distinct optimal point sets must also match,
optionally restricted to one side split.

The case table is checked when the module is imported; an entry without an
expected value stops the import.
"""

from __future__ import annotations

import json
import math
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from decimal import ROUND_HALF_EVEN, Decimal, localcontext
from fractions import Fraction

from gmpy2 import mpfr

from ._numbers import (
    DEFAULT_PRECISION,
    constants,
    format_decimal,
    format_rational,
    is_exact,
    parse_ordinate_squared,
    working,
)
from .errors import NoOptimalSet, QuantizationError
from .geometry import BUILTIN_CONSTRAINTS, Point, u1, u2
from .measure import BUILTIN_MEASURES, ReciprocalGeometricMeasure, distortion
from .solver import (
    DEFAULT_WINDOW,
    InfiniteSweep,
    solve_finite,
    solve_infinite,
    predicted_blocks,
)

#: ``reproduce`` raises the mantissa above this max-n
AUTO_PRECISION_N = 300


def auto_precision(max_n: int, precision: int) -> int:
    """Mantissa bits needed to resolve block errors of order 2**-n."""
    if max_n > AUTO_PRECISION_N:
        return max(precision, math.ceil(1.2 * max_n) + 128)
    return precision


@dataclass(frozen=True)
class ReproCase:
    """One reference result.

    ``kind`` selects the runner: ``value`` (optimum and error), ``none``
    (no optimal set exists for any n in ``n_range``), ``closed`` (decimal
    closed form evaluated at the working precision), ``fixed`` (distortion
    of a fixed codebook), ``structure`` (block structure for a range of n) and
    ``claim`` (a single block-error sum).
    """

    case_id: str
    suite: str
    measure: str
    constraint: str
    n: int
    expected: str
    kind: str = "value"
    multiplicity: int | None = None
    split: tuple | None = None
    points: tuple | None = None
    n_range: tuple | None = None
    digits: int | None = None


@dataclass
class CaseOutcome:
    case_id: str
    passed: bool
    expected: str
    got: str
    checks: dict = field(default_factory=dict)
    seconds: float = 0.0

    def as_dict(self, timing: bool = False) -> dict:
        d = asdict(self)
        if not timing:
            d.pop("seconds")
        return d


# ---------------------------------------------------------------------------
# case table


def _p(x, y):
    return (x, y)


UNIFORM_TRIANGLE_SETS = {
    1: [_p("-9/4", "3*sqrt(3)/4")],
    2: [_p("-11/4", "sqrt(3)/4"), _p("21/8", "3*sqrt(3)/8")],
    3: [_p("-23/8", "sqrt(3)/8"), _p("-19/8", "5*sqrt(3)/8"), _p("11/4", "sqrt(3)/4")],
    4: [_p("-3", "0"), _p("-21/8", "3*sqrt(3)/8"), _p("19/8", "5*sqrt(3)/8"), _p("23/8", "sqrt(3)/8")],
    5: [_p("-3", "0"), _p("-11/4", "sqrt(3)/4"), _p("-5/2", "sqrt(3)/2"),
        _p("19/8", "5*sqrt(3)/8"), _p("23/8", "sqrt(3)/8")],
    6: [_p("-23/8", "sqrt(3)/8"), _p("-5/2", "sqrt(3)/2"), _p("-9/4", "3*sqrt(3)/4"),
        _p("5/2", "sqrt(3)/2"), _p("11/4", "sqrt(3)/4"), _p("3", "0")],
    7: [_p("-3", "0"), _p("-11/4", "sqrt(3)/4"), _p("-5/2", "sqrt(3)/2"), _p("-9/4", "3*sqrt(3)/4"),
        _p("5/2", "sqrt(3)/2"), _p("11/4", "sqrt(3)/4"), _p("3", "0")],
}

UNIFORM_TRIANGLE = ["43/4", "16/7", "15/7", "117/56", "29/14", "115/56", "57/28"]
UNIFORM_TRIANGLE_MULT = {3: (2, None), 4: (4, None), 5: (7, (3, 2)), 6: (6, None), 7: (2, None)}
NONUNIFORM_TRIANGLE = ["41343/16384", "259/1024", "361/1536", "117/512", "29/128", "115/512", "57/256"]
NONUNIFORM_TRIANGLE_MULT = {5: 8, 6: 6}


def _finite_cases():
    cases = [
        ReproCase("uniform-semicircle-n1", "finite", "uniform", "semicircle", 1, "13"),
        ReproCase("uniform-semicircle-n2", "finite", "uniform", "semicircle", 2, "19/7",
                  points=(_p("-3", "0"), _p("3", "0"))),
        ReproCase("uniform-semicircle-none", "finite", "uniform", "semicircle", 7, "none",
                  kind="none", n_range=(3, 7)),
        ReproCase("nonuniform-semicircle-n1", "finite", "nonuniform", "semicircle", 1, "177/64"),
        ReproCase("nonuniform-semicircle-n2", "finite", "nonuniform", "semicircle", 2, "93/64"),
        ReproCase("nonuniform-semicircle-none", "finite", "nonuniform", "semicircle", 7, "none",
                  kind="none", n_range=(3, 7)),
    ]
    for n, value in enumerate(UNIFORM_TRIANGLE, start=1):
        mult, split = UNIFORM_TRIANGLE_MULT.get(n, (None, None))
        cases.append(ReproCase(f"uniform-triangle-n{n}", "finite", "uniform", "triangle", n, value,
                               multiplicity=mult, split=split,
                               points=tuple(UNIFORM_TRIANGLE_SETS[n])))
    cases.append(ReproCase("uniform-triangle-none", "finite", "uniform", "triangle", 8, "none",
                           kind="none", n_range=(8, 8)))
    for n, value in enumerate(NONUNIFORM_TRIANGLE, start=1):
        cases.append(ReproCase(f"nonuniform-triangle-n{n}", "finite", "nonuniform", "triangle", n,
                               value, multiplicity=NONUNIFORM_TRIANGLE_MULT.get(n)))
    cases.append(ReproCase("nonuniform-triangle-none", "finite", "nonuniform", "triangle", 8, "none",
                           kind="none", n_range=(8, 8)))
    return cases


def _infinite_cases():
    return [
        ReproCase("reciprocal-semicircle-n1", "infinite", "reciprocal", "unit-semicircle", 1,
                  "(pi^2 - 6(-2 + log^2 2 + log 16))/12", kind="closed", digits=30),
        ReproCase("reciprocal-semicircle-n2", "infinite", "reciprocal", "unit-semicircle", 2,
                  "(pi^2 - 6 - 6 log^2 2 - 12 log 2 + 6 log 4)/12", kind="closed", digits=30),
        ReproCase("reciprocal-semicircle-none", "infinite", "reciprocal", "unit-semicircle", 3,
                  "none", kind="none", n_range=(3, 3)),
        ReproCase("reciprocal-triangle-n1", "infinite", "reciprocal", "unit-triangle", 1, "0.172407"),
        ReproCase("reciprocal-triangle-n2", "infinite", "reciprocal", "unit-triangle", 2, "0.0635876",
                  points=("u1(1)", "u2(2 log 2 - 1)")),
        ReproCase("reciprocal-triangle-n3", "infinite", "reciprocal", "unit-triangle", 3, "0.0619715",
                  multiplicity=2),
        ReproCase("reciprocal-triangle-four-point", "infinite", "reciprocal", "unit-triangle", 4,
                  "0.0617409", kind="fixed"),
        ReproCase("reciprocal-triangle-structure", "infinite", "reciprocal", "unit-triangle", 6,
                  "blocks {1},...,{n-2},{n-1,n},[n+1,inf]", kind="structure"),
        ReproCase("reciprocal-claim-n2000", "infinite", "reciprocal", "none", 1,
                  "1.4444190239372496100e-615", kind="claim"),
    ]


def _validate(cases):
    seen = set()
    for c in cases:
        if not c.expected:
            raise RuntimeError(f"case {c.case_id!r} has no expected value")
        if c.case_id in seen:
            raise RuntimeError(f"duplicate case id {c.case_id!r}")
        if c.kind == "closed" and not c.digits:
            raise RuntimeError(f"closed-form case {c.case_id!r} needs a digit count")
        seen.add(c.case_id)
    return tuple(cases)


CASES = _validate(_finite_cases() + _infinite_cases())


def select(suite: str = "all", max_n: int | None = None):
    """Cases of a suite with n <= max_n (the structure case runs from 6 up to max_n)."""
    out = []
    for c in CASES:
        if suite != "all" and c.suite != suite:
            continue
        if max_n is not None and c.n > max_n:
            continue
        out.append(c)
    return out


# ---------------------------------------------------------------------------
# comparisons


def matches_printed(value, printed: str) -> bool:
    """Whether ``value`` rounds (half-even) to ``printed`` at its significant digits."""
    target = Decimal(printed)
    sig = len(target.as_tuple().digits)
    if isinstance(value, (Decimal, str)):
        got = Decimal(value)
    else:
        got = Decimal(format_decimal(value, sig + 20))
    with localcontext() as ctx:
        ctx.prec = sig
        ctx.rounding = ROUND_HALF_EVEN
        return +got == target


def _listed(points):
    return [Point(Fraction(x), parse_ordinate_squared(y)) for x, y in points]


def _same_set(a, b, tol=None) -> bool:
    if len(a) != len(b):
        return False
    ka = sorted(a, key=lambda p: (float(p.x), float(p.y2)))
    kb = sorted(b, key=lambda p: (float(p.x), float(p.y2)))
    for p, q in zip(ka, kb):
        if tol is None:
            if (p.x, p.y2) != (q.x, q.y2):
                return False
        elif abs(p.x - q.x) > tol or abs(p.y2 - q.y2) > tol:
            return False
    return True


def _value_string(v, digits=30) -> str:
    return format_rational(Fraction(v)) if is_exact(v) else format_decimal(v, digits)


# ---------------------------------------------------------------------------
# runners


def _run_finite_value(case):
    measure = BUILTIN_MEASURES[case.measure]()
    constraint = BUILTIN_CONSTRAINTS[case.constraint]()
    r = solve_finite(measure, constraint, case.n)
    checks = {"value": r.value == Fraction(case.expected)}
    if case.multiplicity is not None:
        count = r.by_split().get(case.split, 0) if case.split else r.multiplicity
        checks["multiplicity"] = count == case.multiplicity
        checks["multiplicity_found"] = count
        if case.split:
            checks["multiplicity_total"] = r.multiplicity
    if case.points is not None:
        listed = _listed(case.points)
        mirror = [p.reflected() for p in listed]
        checks["points"] = any(_same_set(o.points, listed) or _same_set(o.points, mirror)
                               for o in r.optima)
    if case.n == 1 and case.constraint == "semicircle" and case.measure == "uniform":
        checks["degenerate_direction"] = all(any(o.degenerate_direction) for o in r.optima)
    return format_rational(r.value), checks


def _run_none(case, precision, window):
    measure = BUILTIN_MEASURES[case.measure]
    constraint = BUILTIN_CONSTRAINTS[case.constraint]()
    checks = {}
    for n in range(case.n_range[0], case.n_range[1] + 1):
        try:
            if case.measure == "reciprocal":
                solve_infinite(constraint, n, precision, window)
            else:
                solve_finite(measure(), constraint, n)
            checks[f"n{n}"] = False
        except NoOptimalSet:
            checks[f"n{n}"] = True
    return "none" if all(checks.values()) else "optimum found", checks


def _closed_form(case_id, bits):
    log2, pi, _ = constants(bits)
    with working(bits):
        if case_id.endswith("n1"):
            return (pi**2 - 6 * (-2 + log2**2 + 4 * log2)) / 12
        # the log 2 and log 4 terms cancel
        return (pi**2 - 6 - 6 * log2**2) / 12


def _run_closed(case, precision, window):
    r = solve_infinite(BUILTIN_CONSTRAINTS[case.constraint](), case.n, precision, window)
    ref = _closed_form(case.case_id, precision + 64)
    with working(precision + 64):
        ok = abs(r.value - ref) <= mpfr(10) ** -case.digits
    return format_decimal(r.value, case.digits + 2), {"value": bool(ok),
                                                      "closed_form": format_decimal(ref, case.digits + 2)}


def _run_triangle_value(case, precision, window):
    sweep = InfiniteSweep(case.n, precision, window)
    r = sweep.solve(case.n)
    checks = {"value": matches_printed(r.value, case.expected),
              "routes_agree": not r.disagreement}
    if case.multiplicity is not None:
        checks["multiplicity"] = r.multiplicity == case.multiplicity
        checks["multiplicity_found"] = r.multiplicity
    if case.points is not None:
        log2, _, _ = constants(precision + 32)
        with working(precision + 32):
            want = [u1(1), u2(2 * log2 - 1)]
        tol = mpfr(2) ** -(precision - 16)
        checks["points"] = any(_same_set(o.points, want, tol) for o in r.optima)
    return format_decimal(r.value, 12), checks


def four_point_codebook(precision=DEFAULT_PRECISION):
    """The four-point test set {u1(1), u2(1/2), u2(1/3), u2(Av[4, oo))}."""
    m = ReciprocalGeometricMeasure(precision)
    tail = m.block(4).av
    return [u1(1), u2(Fraction(1, 2)), u2(Fraction(1, 3)), u2(tail)]


def _run_fixed(case, precision, window):
    m = ReciprocalGeometricMeasure(precision)
    with working(precision + 32):
        d = distortion(m, four_point_codebook(precision + 32), precision)
    return format_decimal(d, 12), {"value": matches_printed(d, case.expected)}


def predicted_codebook(n, precision=DEFAULT_PRECISION):
    """The lifted set predicted by the block pattern for n points."""
    m = ReciprocalGeometricMeasure(precision)
    pts = [u1(1)]
    if n <= 5:
        pts += [u2(Fraction(1, k)) for k in range(2, n)]
        if n >= 2:
            pts.append(u2(m.block(n).av))
    else:
        pts += [u2(Fraction(1, k)) for k in range(2, n - 1)]
        pts.append(u2(m.block_exact(n - 1, n).av))
        pts.append(u2(m.block(n + 1).av))
    return pts


def _run_structure(case, precision, window, max_n):
    sweep = InfiniteSweep(max_n, precision, window)
    checks = {"window_doubling": sweep.validate_window()}
    bad_blocks, bad_sets = [], []
    tol = mpfr(2) ** -(precision - 24)
    with working(sweep.uncon.bits):
        for n in range(case.n, max_n + 1):
            _, parts = sweep.uncon.partitions(n)
            if parts != [predicted_blocks(n)]:
                bad_blocks.append(n)
            r = sweep.solve(n, check=n <= 120)
            want = predicted_codebook(n, sweep.uncon.bits)
            if not any(_same_set(o.points, want, tol) for o in r.optima):
                bad_sets.append(n)
    checks["blocks"] = not bad_blocks
    checks["lifted_sets"] = not bad_sets
    if bad_blocks:
        checks["blocks_failed_at"] = bad_blocks[:10]
    if bad_sets:
        checks["sets_failed_at"] = bad_sets[:10]
    got = f"n={case.n}..{max_n}" if not (bad_blocks or bad_sets) else "structure differs"
    return got, checks


def _run_claim(case, precision, window):
    bits = max(precision, 2400)
    m = ReciprocalGeometricMeasure(bits)
    with working(bits + 32):
        total = m.block(2001).er + mpfr(m.block_exact(1999, 2000).er, bits + 32)
    return format_decimal(total, 25), {"value": matches_printed(total, case.expected)}


def run_case(case, precision=DEFAULT_PRECISION, window=DEFAULT_WINDOW, max_n=None) -> CaseOutcome:
    start = time.perf_counter()
    try:
        if case.kind == "none":
            got, checks = _run_none(case, precision, window)
        elif case.kind == "closed":
            got, checks = _run_closed(case, precision, window)
        elif case.kind == "fixed":
            got, checks = _run_fixed(case, precision, window)
        elif case.kind == "structure":
            got, checks = _run_structure(case, precision, window, max_n or 100)
        elif case.kind == "claim":
            got, checks = _run_claim(case, precision, window)
        elif case.measure == "reciprocal":
            got, checks = _run_triangle_value(case, precision, window)
        else:
            got, checks = _run_finite_value(case)
    except QuantizationError as exc:
        got, checks = f"error: {type(exc).__name__}: {exc}", {"ran": False}
    passed = all(v for v in checks.values() if isinstance(v, bool))
    return CaseOutcome(case.case_id, passed, case.expected, got, checks,
                       seconds=time.perf_counter() - start)


def _run_packed(args):
    return run_case(*args)


def thread_cap() -> int:
    raw = os.environ.get("CQ_THREADS")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return os.cpu_count() or 1


def reproduce(suite="all", max_n=None, precision=DEFAULT_PRECISION, window=DEFAULT_WINDOW,
              workers=None):
    """Run the selected cases; outcomes are sorted by case id."""
    cases = select(suite, max_n)
    workers = min(workers or thread_cap(), max(len(cases), 1))
    jobs = [(c, precision, window, max_n) for c in cases]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            outcomes = list(pool.map(_run_packed, jobs))
    else:
        outcomes = [_run_packed(j) for j in jobs]
    return sorted(outcomes, key=lambda o: o.case_id)


def report_json(outcomes, timing=False) -> str:
    doc = {
        "passed": sum(o.passed for o in outcomes),
        "failed": sum(not o.passed for o in outcomes),
        "cases": [o.as_dict(timing) for o in outcomes],
    }
    return json.dumps(doc, indent=2, sort_keys=True, default=str)


def report_table(outcomes) -> str:
    width = max((len(o.case_id) for o in outcomes), default=10)
    lines = []
    for o in outcomes:
        flag = "PASS" if o.passed else "FAIL"
        lines.append(f"{flag}  {o.case_id:<{width}}  expected {o.expected}  got {o.got}")
    lines.append(f"{sum(o.passed for o in outcomes)} passed, {sum(not o.passed for o in outcomes)} failed")
    return "\n".join(lines)
