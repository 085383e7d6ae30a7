"""Command-line interface.

    cquant solve MEASURE CONSTRAINT N [--precision BITS] [--format json|csv]
    cquant reproduce [--suite all|finite|infinite] [--max-n N]
    cquant series K ELL|inf [--precision BITS]
    cquant oracle MEASURE CONSTRAINT N [--seed S] [--resolution R]

MEASURE and CONSTRAINT are builtin names (uniform, nonuniform, reciprocal;
semicircle, unit-semicircle, triangle, unit-triangle), JSON files, or inline
JSON.  Exit codes: 0 success, 1 reproduction failure, 2 bad input,
3 no optimal set.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from fractions import Fraction

from . import io
from ._numbers import (
    DEFAULT_PRECISION,
    digits_for,
    format_decimal,
    format_rational,
    working,
)
from .errors import NoOptimalSet, PrecisionInsufficient, QuantizationError
from .measure import ReciprocalGeometricMeasure
from .oracle import OracleConfig, grid_search, hausdorff
from .repro import auto_precision, report_json, report_table, reproduce
from .solver import DEFAULT_WINDOW, solve

EXIT_OK, EXIT_FAIL, EXIT_INPUT, EXIT_NONE = 0, 1, 2, 3

log = logging.getLogger("cquant")


def _positive(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError(f"expected a positive integer, got {text}")
    return v


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="cquant", description="Constrained quantization solver.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="optimal n-point codebook of a measure on a constraint")
    p.add_argument("measure")
    p.add_argument("constraint")
    p.add_argument("n", type=int)
    p.add_argument("--precision", type=_positive, default=DEFAULT_PRECISION, metavar="BITS")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.add_argument("--window", type=_positive, default=DEFAULT_WINDOW, metavar="W")
    p.add_argument("--workers", type=_positive, default=1)

    p = sub.add_parser("reproduce", help="rerun the reference cases")
    p.add_argument("--suite", choices=("all", "finite", "infinite"), default="all")
    p.add_argument("--max-n", type=_positive, default=100)
    p.add_argument("--precision", type=_positive, default=DEFAULT_PRECISION, metavar="BITS")
    p.add_argument("--window", type=_positive, default=DEFAULT_WINDOW, metavar="W")
    p.add_argument("--format", choices=("table", "json"), default="table")
    p.add_argument("--workers", type=_positive, default=None,
                   help="worker processes (default: CQ_THREADS or the CPU count)")

    p = sub.add_parser("series", help="weight, Av and Er of a block of the reciprocal measure")
    p.add_argument("k", type=int)
    p.add_argument("ell")
    p.add_argument("--precision", type=_positive, default=DEFAULT_PRECISION, metavar="BITS")

    p = sub.add_parser("oracle", help="brute-force grid search compared with the solver")
    p.add_argument("measure")
    p.add_argument("constraint")
    p.add_argument("n", type=int)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--resolution", type=int, default=OracleConfig.resolution)
    p.add_argument("--rounds", type=int, default=OracleConfig.rounds)
    p.add_argument("--restarts", type=int, default=OracleConfig.restarts)
    p.add_argument("--truncation", type=_positive, default=OracleConfig.truncation)
    p.add_argument("--precision", type=_positive, default=DEFAULT_PRECISION, metavar="BITS")
    return parser


def _emit(text):
    sys.stdout.write(text if text.endswith("\n") else text + "\n")


def cmd_solve(args) -> int:
    if args.n < 1:
        print(f"error: n must be positive, got {args.n}", file=sys.stderr)
        return EXIT_INPUT
    measure = io.parse_measure(args.measure, args.precision)
    constraint = io.parse_constraint(args.constraint)
    try:
        result = solve(measure, constraint, args.n, args.precision, args.window, workers=args.workers)
    except NoOptimalSet as exc:
        doc = io.no_optimum_document(exc, args.n, None if measure.is_finite else args.precision,
                                     measure.name, getattr(constraint, "name", ""))
        _emit(io.result_csv(doc) if args.format == "csv" else io.dumps(doc))
        print(f"note: {exc}", file=sys.stderr)
        return EXIT_NONE
    doc = io.result_document(result)
    _emit(io.result_csv(doc) if args.format == "csv" else io.dumps(doc))
    return EXIT_OK


def cmd_reproduce(args) -> int:
    precision = auto_precision(args.max_n, args.precision)
    if precision != args.precision:
        log.warning("max-n %d needs more mantissa; precision raised from %d to %d bits",
                    args.max_n, args.precision, precision)
    outcomes = reproduce(args.suite, args.max_n, precision, args.window, args.workers)
    _emit(report_json(outcomes) if args.format == "json" else report_table(outcomes))
    return EXIT_OK if all(o.passed for o in outcomes) else EXIT_FAIL


def _value_doc(v, digits):
    if isinstance(v, Fraction):
        return {"exact": format_rational(v), "decimal": format_decimal(v, digits)}
    return {"exact": None, "decimal": format_decimal(v, digits)}


def cmd_series(args) -> int:
    unbounded = args.ell.strip().lower() in ("inf", "infinity", "oo")
    if args.k < 1:
        print("error: k must be positive", file=sys.stderr)
        return EXIT_INPUT
    if not unbounded:
        try:
            ell = int(args.ell)
        except ValueError:
            print(f"error: ELL must be an integer or inf, got {args.ell!r}", file=sys.stderr)
            return EXIT_INPUT
        if args.k > ell:
            print(f"error: k = {args.k} exceeds ell = {ell}", file=sys.stderr)
            return EXIT_INPUT
    measure = ReciprocalGeometricMeasure(args.precision)
    digits = digits_for(args.precision)
    st = measure.block(args.k) if unbounded else measure.block_exact(args.k, ell)
    with working(args.precision):
        doc = {
            "k": args.k,
            "ell": "inf" if unbounded else ell,
            "precision": args.precision,
            "weight": _value_doc(st.weight, digits),
            "av": _value_doc(st.av, digits),
            "er": _value_doc(st.er, digits),
        }
    _emit(json.dumps(doc, indent=2))
    return EXIT_OK


def cmd_oracle(args) -> int:
    if args.n < 1:
        print(f"error: n must be positive, got {args.n}", file=sys.stderr)
        return EXIT_INPUT
    try:
        config = OracleConfig(args.resolution, args.rounds, args.restarts, args.seed, args.truncation)
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    measure = io.parse_measure(args.measure, args.precision)
    constraint = io.parse_constraint(args.constraint)
    found = grid_search(measure, constraint, args.n, config)
    doc = {"n": args.n, "oracle": {"value": found.value, "points": found.points,
                                   "tail_bound": found.tail_bound}}
    try:
        result = solve(measure, constraint, args.n, args.precision)
        exact = float(result.value)
        doc["solver"] = {"value": exact, "multiplicity": result.multiplicity}
        doc["gap"] = found.value - exact
        doc["hausdorff"] = min(hausdorff(found.points, [p.as_floats() for p in o.points])
                               for o in result.optima)
    except NoOptimalSet as exc:
        doc["solver"] = {"value": None if exc.infimum is None else float(exc.infimum),
                         "multiplicity": 0}
    _emit(json.dumps(doc, indent=2))
    return EXIT_OK


COMMANDS = {"solve": cmd_solve, "reproduce": cmd_reproduce, "series": cmd_series, "oracle": cmd_oracle}


def main(argv=None) -> int:
    logging.basicConfig(level=logging.WARNING, format="%(levelname)s: %(message)s")
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_INPUT if exc.code else EXIT_OK
    try:
        return COMMANDS[args.command](args)
    except io.InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except PrecisionInsufficient as exc:
        print(f"error: {exc}; rerun with a larger --precision", file=sys.stderr)
        return EXIT_FAIL
    except (QuantizationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
