import json
import subprocess
import sys
from fractions import Fraction

from cquant.cli import main
from cquant.repro import matches_printed


def run(capsys, *argv):
    code = main(list(argv))
    out, err = capsys.readouterr()
    return code, out, err


def test_solve_uniform_triangle(capsys):
    code, out, _ = run(capsys, "solve", "uniform", "triangle", "7")
    doc = json.loads(out)
    assert code == 0 and doc["error"]["exact"] == "57/28" and doc["multiplicity"] == 2


def test_solve_reciprocal(capsys):
    code, out, _ = run(capsys, "solve", "reciprocal", "unit-triangle", "1")
    assert code == 0
    assert matches_printed(json.loads(out)["error"]["decimal"], "0.172407")


def test_solve_csv(capsys):
    code, out, _ = run(capsys, "solve", "uniform", "triangle", "2", "--format", "csv")
    assert code == 0 and out.splitlines()[0].startswith("n,optimum")


def test_solve_exit_codes(capsys):
    assert run(capsys, "solve", "uniform", "triangle", "0")[0] == 2
    assert run(capsys, "solve", "uniform", "semicircle", "3")[0] == 3
    assert run(capsys, "solve", "nope", "triangle", "2")[0] == 2
    assert run(capsys, "solve", "uniform", "triangle", "x")[0] == 2


def test_series(capsys):
    code, out, _ = run(capsys, "series", "1", "inf")
    assert code == 0 and json.loads(out)["av"]["decimal"].startswith("0.69314718055994530941")
    code, out, _ = run(capsys, "series", "5", "5")
    assert json.loads(out)["er"]["exact"] == "0"
    assert run(capsys, "series", "6", "5")[0] == 2
    code, out, _ = run(capsys, "series", "1999", "2000", "--precision", "2400")
    doc = json.loads(out)
    assert code == 0 and Fraction(doc["er"]["exact"]) > 0
    assert doc["er"]["decimal"].startswith("3.63271923447851")


def test_oracle_command(capsys):
    code, out, _ = run(capsys, "oracle", "uniform", "triangle", "2")
    doc = json.loads(out)
    assert code == 0 and 0 <= doc["gap"] + 1e-12 and doc["gap"] < 1e-4
    assert run(capsys, "oracle", "uniform", "triangle", "2", "--resolution", "10")[0] == 2


def test_reproduce_finite_reports_failures(capsys):
    code, out, _ = run(capsys, "reproduce", "--suite", "finite", "--workers", "1")
    assert code == 1
    assert "PASS  uniform-triangle-n7" in out
    assert "FAIL  nonuniform-triangle-n2" in out


def test_reproduce_infinite_small(capsys):
    code, out, _ = run(capsys, "reproduce", "--suite", "infinite", "--max-n", "3", "--format", "json")
    doc = json.loads(out)
    ids = {c["case_id"]: c["passed"] for c in doc["cases"]}
    assert code == 0
    assert ids["reciprocal-triangle-n3"] and "reciprocal-triangle-structure" not in ids


def test_module_entry_point():
    out = subprocess.run([sys.executable, "-m", "cquant", "series", "5", "5"],
                         capture_output=True, text=True, check=True).stdout
    assert json.loads(out)["av"]["exact"] == "1/5"
