import json
from fractions import Fraction

import pytest

from cquant.errors import NoOptimalSet
from cquant.geometry import ArcConstraint, Point, SegmentChain
from cquant.io import (
    InputError,
    dumps,
    no_optimum_document,
    parse_constraint,
    parse_measure,
    result_csv,
    result_document,
)
from cquant.measure import FiniteDiscreteMeasure, ReciprocalGeometricMeasure
from cquant.solver import solve_finite, sweep_infinite


def test_parse_measures(tmp_path):
    m = parse_measure({"type": "finite", "support": [-1, 0, 1], "weights": ["1/4", "1/2", "1/4"]})
    assert isinstance(m, FiniteDiscreteMeasure) and m.weights[1] == Fraction(1, 2)
    assert isinstance(parse_measure('{"type": "reciprocal"}', 128), ReciprocalGeometricMeasure)
    path = tmp_path / "m.json"
    path.write_text(json.dumps({"type": "builtin", "name": "uniform"}))
    assert parse_measure(str(path)).size == 7
    assert parse_measure("nonuniform").weights[-1] == Fraction(1, 64)


@pytest.mark.parametrize("bad", [
    "no-such-measure",
    {"type": "finite", "support": [0, 1], "weights": ["1/2"]},
    {"type": "finite", "support": [0, 1], "weights": ["1/2", "1/3"]},
    {"type": "other"},
    "{not json",
])
def test_bad_measures(bad):
    with pytest.raises(InputError):
        parse_measure(bad)


def test_parse_constraints():
    arc = parse_constraint({"type": "arc", "center": [0, 0], "radius": 3, "theta": [0, 3.14159265358979]})
    assert isinstance(arc, ArcConstraint) and arc.theta_hi.pi_multiple == 1
    chain = parse_constraint({"type": "chain", "pieces": [[[-3, 0], [0, 5.196152422706632]],
                                                          [[0, "3*sqrt(3)"], [3, 0]]]})
    assert isinstance(chain, SegmentChain)
    assert chain.pieces[0].p1 == Point(Fraction(0), Fraction(27)) == chain.pieces[1].p0
    assert chain.exact
    with pytest.raises(InputError):
        parse_constraint({"type": "arc", "radius": -1})
    with pytest.raises(InputError):
        parse_constraint("hexagon")


def test_result_document_finite():
    r = solve_finite(parse_measure("uniform"), parse_constraint("triangle"), 7)
    doc = result_document(r)
    assert doc["error"]["exact"] == "57/28"
    assert doc["multiplicity"] == 2 and doc["mode"] == "proved"
    assert doc["optima"][0]["points"][0] == ["-3", "0"]
    json.loads(dumps(doc))
    rows = result_csv(doc).strip().splitlines()
    assert rows[0].startswith("n,optimum,point") and len(rows) == 1 + 14


def test_result_document_infinite():
    _, (r,) = sweep_infinite(1)
    doc = result_document(r)
    assert doc["error"]["exact"] is None
    assert doc["error"]["decimal"].startswith("0.172406")
    assert doc["optima"][0]["canonical"] == ["inf"]


def test_no_optimum_document():
    doc = no_optimum_document(NoOptimalSet(3, 2, Fraction(19, 7)), 3)
    assert doc["existence"] == "not_exists" and doc["max_supported_n"] == 2
    assert doc["error"]["exact"] == "19/7"
    assert result_csv(doc).count("\n") == 2
