"""Brute force against the exact solver.

The oracle knows nothing about blocks or closed forms: it places points on a
parameter grid along every piece, keeps the best multiset, polishes it by
coordinate descent and reports a float64 distortion.  Because it evaluates
real codebooks it can only land on or above the true optimum (up to float
rounding), and the gap shrinks with the grid.

    python3 demos/oracle_crosscheck.py
"""

from cquant import NoOptimalSet, nonuniform_seven, solve_finite, uniform_seven
from cquant.geometry import semicircle, triangle
from cquant.oracle import OracleConfig, grid_search


def main():
    print(f"{'measure':<11}{'constraint':<12}{'n':>2}  {'exact':>14}  {'oracle':>14}  gap")
    for measure in (uniform_seven(), nonuniform_seven()):
        for constraint in (semicircle(), triangle()):
            for n in range(1, 5):
                try:
                    exact = float(solve_finite(measure, constraint, n).value)
                    tag = ""
                except NoOptimalSet as exc:
                    exact = float(exc.infimum)
                    tag = "  (infimum only)"
                found = grid_search(measure, constraint, n)
                print(f"{measure.name:<11}{constraint.name:<12}{n:>2}  {exact:14.10f}  "
                      f"{found.value:14.10f}  {found.value - exact:.1e}{tag}")

    print("\nrefining the grid on the uniform semicircle, n = 2:")
    for res in (64, 180, 720):
        found = grid_search(uniform_seven(), semicircle(), 2, OracleConfig(resolution=res, rounds=2))
        print(f"  resolution {res:4d}: {found.value:.12f}  (exact 19/7 = {19 / 7:.12f})")


if __name__ == "__main__":
    main()
