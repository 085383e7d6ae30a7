from fractions import Fraction

import pytest

from cquant.errors import NoOptimalSet
from cquant.geometry import Point, semicircle, triangle
from cquant.measure import FiniteDiscreteMeasure, nonuniform_seven, uniform_seven
from cquant.solver import enumeration_value, finite_dp_value, solve_finite


def test_uniform_triangle_three_points():
    r = solve_finite(uniform_seven(), triangle(), 3)
    assert r.value == Fraction(15, 7)
    assert r.multiplicity == 2
    a, b = (set(o.points) for o in r.optima)
    assert {p.reflected() for p in a} == b


def test_uniform_triangle_five_points():
    r = solve_finite(uniform_seven(), triangle(), 5)
    assert r.value == Fraction(29, 14)
    assert r.by_split()[(3, 2)] == 7
    assert r.by_split()[(2, 3)] == 7


def test_nonuniform_triangle_four_points_has_vertex():
    r = solve_finite(nonuniform_seven(), triangle(), 4)
    assert r.value == Fraction(3413, 3072)
    assert any(Point(Fraction(-3), Fraction(0)) in o.points for o in r.optima)


def test_uniform_semicircle_nonexistence():
    with pytest.raises(NoOptimalSet) as info:
        solve_finite(uniform_seven(), semicircle(), 3)
    assert info.value.max_supported_n == 2
    assert info.value.infimum == Fraction(19, 7)


def test_semicircle_one_point_is_direction_free():
    r = solve_finite(uniform_seven(), semicircle(), 1)
    assert r.value == 13 and r.continuum
    assert all(o.degenerate_direction == [True] for o in r.optima)


def test_more_points_than_atoms():
    with pytest.raises(NoOptimalSet) as info:
        solve_finite(uniform_seven(), triangle(), 8)
    assert info.value.max_supported_n == 7


def test_invalid_n():
    with pytest.raises(ValueError):
        solve_finite(uniform_seven(), triangle(), 0)


@pytest.mark.parametrize("n", range(1, 8))
def test_three_routes_agree_on_builtins(n):
    for m in (uniform_seven(), nonuniform_seven()):
        r = solve_finite(m, triangle(), n)
        assert r.routes["enumeration"] == r.routes["dp"] == r.routes["voronoi"] == r.value
        assert enumeration_value(m, triangle(), n) == finite_dp_value(m, triangle(), n) == r.value


def test_optima_attain_value_and_are_distinct():
    r = solve_finite(uniform_seven(), triangle(), 6)
    keys = {frozenset(o.points) for o in r.optima}
    assert len(keys) == r.multiplicity == 10


def test_parallel_scan_matches_serial():
    m = FiniteDiscreteMeasure(range(9), [Fraction(1, 9)] * 9)
    a = solve_finite(m, triangle(), 4)
    b = solve_finite(m, triangle(), 4, workers=3)
    assert a.value == b.value
    assert [o.points for o in a.optima] == [o.points for o in b.optima]


def test_monotone_in_n():
    values = [solve_finite(uniform_seven(), triangle(), n).value for n in range(1, 8)]
    assert all(a > b for a, b in zip(values, values[1:]))
