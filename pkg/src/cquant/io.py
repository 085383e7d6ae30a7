"""JSON and CSV input/output for measures, constraints and results."""

from __future__ import annotations

import csv
import io
import json
from fractions import Fraction
from pathlib import Path

from ._numbers import (
    digits_for,
    format_decimal,
    format_rational,
    is_exact,
    parse_ordinate_squared,
    to_fraction,
)
from .errors import NoOptimalSet
from .geometry import BUILTIN_CONSTRAINTS, ArcConstraint, Point, Segment, SegmentChain
from .measure import BUILTIN_MEASURES, FiniteDiscreteMeasure, ReciprocalGeometricMeasure

EXACT_DIGITS = 30


class InputError(ValueError):
    """Malformed measure or constraint description."""


def _load(source):
    """A dict from a dict, a JSON string, a path to a JSON file, or a builtin name."""
    if isinstance(source, dict):
        return source
    text = str(source)
    path = Path(text)
    if path.suffix == ".json" or path.exists():
        try:
            return json.loads(path.read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise InputError(f"cannot read {text}: {exc}") from exc
    if text.lstrip().startswith("{"):
        try:
            return json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"invalid JSON: {exc}") from exc
    return {"type": "builtin", "name": text}


def parse_measure(source, precision=None):
    spec = _load(source)
    kind = spec.get("type")
    try:
        if kind == "builtin":
            name = spec.get("name")
            if name not in BUILTIN_MEASURES:
                raise InputError(f"unknown measure {name!r}; builtins: {', '.join(BUILTIN_MEASURES)}")
            if name == "reciprocal":
                return ReciprocalGeometricMeasure(precision or 256)
            return BUILTIN_MEASURES[name]()
        if kind == "reciprocal":
            return ReciprocalGeometricMeasure(precision or 256)
        if kind == "finite":
            return FiniteDiscreteMeasure(spec["support"], spec["weights"], name=spec.get("name", ""))
    except InputError:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad measure description: {exc}") from exc
    raise InputError(f"unknown measure type {kind!r}")


def _point(pair):
    """Chain vertex from [x, y]; y may be "c*sqrt(r)", a rational, or a decimal.

    A decimal whose square lies within 1e-9 (relative) of a rational with
    denominator at most 1000 is taken to be the square root of that rational,
    so "5.196152422706632" gives the exact ordinate 3*sqrt(3).
    """
    x, y = pair
    x = to_fraction(x)
    if isinstance(y, str) and "sqrt" in y:
        return Point(x, parse_ordinate_squared(y))
    y2 = parse_ordinate_squared(y)
    near = y2.limit_denominator(1000)
    if y2 != near and abs(near - y2) <= near * Fraction(1, 10**9):
        y2 = near
    return Point(x, y2)


def parse_constraint(source):
    spec = _load(source)
    kind = spec.get("type")
    try:
        if kind == "builtin":
            name = spec.get("name")
            if name not in BUILTIN_CONSTRAINTS:
                raise InputError(
                    f"unknown constraint {name!r}; builtins: {', '.join(BUILTIN_CONSTRAINTS)}"
                )
            return BUILTIN_CONSTRAINTS[name]()
        if kind == "arc":
            return ArcConstraint(spec.get("center", [0, 0]), spec["radius"],
                                 spec.get("theta", [0, "pi"]), name=spec.get("name", "arc"))
        if kind == "chain":
            pieces = [Segment(_point(a), _point(b), name=f"S{i + 1}")
                      for i, (a, b) in enumerate(spec["pieces"])]
            return SegmentChain(pieces, name=spec.get("name", "chain"))
    except InputError:
        raise
    except (KeyError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"bad constraint description: {exc}") from exc
    raise InputError(f"unknown constraint type {kind!r}")


# ---------------------------------------------------------------------------
# output


def error_document(value, precision=None):
    if is_exact(value):
        return {"exact": format_rational(Fraction(value)),
                "decimal": format_decimal(Fraction(value), EXACT_DIGITS),
                "digits": EXACT_DIGITS}
    digits = digits_for(precision or value.precision)
    return {"exact": None, "decimal": format_decimal(value, digits), "digits": digits}


def _block_doc(a, b):
    return [a, "inf" if b is None else b]


def result_document(result) -> dict:
    digits = digits_for(result.precision) if result.precision else EXACT_DIGITS
    optima = []
    for o in result.optima:
        optima.append({
            "points": [list(p.strings(digits)) for p in o.points],
            "canonical": [c if c is not None else "inf" for c in o.composition],
            "blocks": [_block_doc(a, b) for a, b in o.blocks],
            "sides": list(o.piece_names),
            "clamped": list(o.clamped),
            "degenerate_direction": list(o.degenerate_direction),
        })
    doc = {
        "n": result.n,
        "measure": result.measure_name,
        "constraint": result.constraint_name,
        "error": error_document(result.value, result.precision),
        "existence": result.existence,
        "optima": optima,
        "multiplicity": result.multiplicity,
        "continuum": result.continuum,
        "by_split": {"-".join(map(str, k)): v for k, v in sorted(result.by_split().items())},
        "mode": result.mode,
    }
    if result.routes:
        doc["routes"] = {k: error_document(v, result.precision)["decimal"]
                         if not is_exact(v) else format_rational(v)
                         for k, v in result.routes.items()}
    if result.disagreement:
        doc["disagreement"] = True
    return doc


def no_optimum_document(exc: NoOptimalSet, n, precision=None, measure="", constraint="") -> dict:
    doc = {
        "n": n,
        "measure": measure,
        "constraint": constraint,
        "error": error_document(exc.infimum, precision) if exc.infimum is not None else None,
        "existence": "not_exists",
        "optima": [],
        "multiplicity": 0,
        "max_supported_n": exc.max_supported_n,
        "mode": "proved",
    }
    return doc


def dumps(doc) -> str:
    return json.dumps(doc, indent=2, sort_keys=False)


CSV_FIELDS = ["n", "optimum", "point", "x", "y", "side", "block_start", "block_end", "error"]


def result_csv(doc) -> str:
    """One row per codebook point of every optimum (a single row when none exists)."""
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    err = doc["error"]["exact"] or doc["error"]["decimal"] if doc.get("error") else ""
    if not doc["optima"]:
        writer.writerow({"n": doc["n"], "error": err})
    for i, opt in enumerate(doc["optima"]):
        for j, ((x, y), side, (a, b)) in enumerate(zip(opt["points"], opt["sides"], opt["blocks"])):
            writer.writerow({"n": doc["n"], "optimum": i, "point": j, "x": x, "y": y,
                             "side": side, "block_start": a, "block_end": b, "error": err})
    return buf.getvalue()
