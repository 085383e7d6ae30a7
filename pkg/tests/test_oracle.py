
import pytest

from cquant.errors import NoOptimalSet
from cquant.geometry import semicircle, triangle, unit_triangle
from cquant.measure import ReciprocalGeometricMeasure, nonuniform_seven, uniform_seven
from cquant.oracle import OracleConfig, grid_search, hausdorff
from cquant.solver import solve_finite, sweep_infinite

# float64 scoring can land a few ulps below an exact optimum
EPS = 1e-12


def test_config_invariants():
    with pytest.raises(ValueError):
        OracleConfig(resolution=32)
    with pytest.raises(ValueError):
        OracleConfig(rounds=1)
    with pytest.raises(ValueError):
        OracleConfig(restarts=-1)


def test_semicircle_two_points_fine_grid():
    r = grid_search(uniform_seven(), semicircle(), 2, OracleConfig(resolution=720))
    assert abs(r.value - 19 / 7) < 1e-4
    assert sorted(round(u, 3) for _, u in r.params) == [0.0, 3.142]


def test_triangle_one_point():
    r = grid_search(uniform_seven(), triangle(), 1)
    assert abs(r.value - 43 / 4) < 1e-6


def test_deterministic_given_seed():
    a = grid_search(nonuniform_seven(), triangle(), 3, OracleConfig(seed=5))
    b = grid_search(nonuniform_seven(), triangle(), 3, OracleConfig(seed=5))
    assert a.value == b.value and a.points == b.points


@pytest.mark.parametrize("measure", [uniform_seven, nonuniform_seven])
@pytest.mark.parametrize("constraint", [semicircle, triangle])
@pytest.mark.parametrize("n", [1, 2, 3, 4])
def test_oracle_against_solver(measure, constraint, n):
    m, c = measure(), constraint()
    found = grid_search(m, c, n)
    try:
        r = solve_finite(m, c, n)
    except NoOptimalSet as exc:
        # the infimum is still approached from above
        assert found.value >= float(exc.infimum) - EPS
        assert found.value - float(exc.infimum) < 1e-4
        return
    exact = float(r.value)
    assert found.value >= exact - EPS
    assert found.value - exact < 1e-4
    if not r.continuum:
        d = min(hausdorff(found.points, [p.as_floats() for p in o.points]) for o in r.optima)
        assert d < 1e-3


def test_full_support_chain():
    # n = N on a chain whose feet cover every atom
    found = grid_search(uniform_seven(), triangle(), 7, OracleConfig(restarts=16))
    exact = float(solve_finite(uniform_seven(), triangle(), 7).value)
    assert exact - EPS <= found.value < exact + 1e-2


@pytest.mark.parametrize("n", [1, 2, 3])
def test_truncated_reciprocal(n):
    _, results = sweep_infinite(3)
    found = grid_search(ReciprocalGeometricMeasure(64), unit_triangle(), n)
    exact = float(results[n - 1].value)
    assert found.tail_bound > 0
    assert found.value >= exact - EPS
    assert found.value - exact < 1e-4


def test_hausdorff():
    assert hausdorff([(0, 0)], [(3, 4)]) == 5
    assert hausdorff([(0, 0), (1, 0)], [(1, 0), (0, 0)]) == 0
