import re
from decimal import Decimal
from fractions import Fraction

import pytest

from cquant import repro
from cquant.repro import (
    CASES,
    ReproCase,
    auto_precision,
    matches_printed,
    report_json,
    reproduce,
    select,
)


def test_case_table_shape():
    finite = [c for c in CASES if c.suite == "finite"]
    assert len(finite) == 22
    ids = [c.case_id for c in CASES]
    assert len(ids) == len(set(ids))
    infinite_values = {c.case_id for c in CASES if c.suite == "infinite"}
    for n in (1, 2, 3):
        assert f"reciprocal-triangle-n{n}" in infinite_values
    for prefix in ("uniform-triangle", "nonuniform-triangle"):
        assert sum(re.fullmatch(prefix + r"-n\d", c.case_id) is not None for c in finite) == 7


def test_missing_expected_value_refused():
    bad = ReproCase("broken", "finite", "uniform", "triangle", 1, "")
    with pytest.raises(RuntimeError):
        repro._validate(list(CASES) + [bad])
    with pytest.raises(RuntimeError):
        repro._validate([CASES[0], CASES[0]])


def test_matches_printed():
    assert matches_printed(Fraction(172406502, 10**9), "0.172407")
    assert not matches_printed(Fraction(1724064, 10**7), "0.172407")
    assert matches_printed(Decimal("1.44441902393724960998e-615"), "1.4444190239372496100e-615")
    assert matches_printed(Decimal("0.06176"), "0.0617600")
    assert not matches_printed(Decimal("0.061759"), "0.0617600")


def test_auto_precision():
    assert auto_precision(100, 256) == 256
    assert auto_precision(2000, 256) == 2528
    assert auto_precision(301, 1000) == 1000


def test_select_respects_max_n():
    ids = {c.case_id for c in select("infinite", 3)}
    assert "reciprocal-triangle-structure" not in ids
    assert "reciprocal-triangle-four-point" not in ids
    assert "reciprocal-triangle-n3" in ids
    assert all(c.suite == "finite" for c in select("finite"))


def test_output_stable_across_worker_counts():
    a = report_json(reproduce("finite", workers=1))
    b = report_json(reproduce("finite", workers=3))
    assert a == b
    assert a == report_json(reproduce("finite", workers=1))


def test_known_outcomes():
    out = {o.case_id: o for o in reproduce("finite", workers=1)}
    assert out["uniform-triangle-n5"].passed
    assert out["uniform-triangle-n5"].checks["multiplicity_total"] == 14
    assert out["uniform-triangle-n6"].checks["multiplicity_found"] == 10
    assert not out["uniform-triangle-n6"].passed
    assert not out["nonuniform-triangle-n2"].passed
    assert out["nonuniform-triangle-n1"].passed
