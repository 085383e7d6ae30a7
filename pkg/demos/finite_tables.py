"""Exact optimal codebooks for the two seven-atom measures.

Both measures live on {-3, ..., 3}.  On the semicircle of radius 3 only one
or two points can ever be optimal; on the two upper sides of the triangle
with base [-3, 3] every n up to 7 has an optimum, and several of them are
attained by more than one point set.

    python3 demos/finite_tables.py
"""

from fractions import Fraction

from cquant import NoOptimalSet, distortion, nonuniform_seven, solve_finite, uniform_seven
from cquant.geometry import Point, semicircle, triangle


def table(measure, constraint, upto=7):
    print(f"\n{measure.name} measure on the {constraint.name}")
    for n in range(1, upto + 1):
        try:
            r = solve_finite(measure, constraint, n)
        except NoOptimalSet as exc:
            print(f"  n={n}: no optimal set (largest n with one: {exc.max_supported_n}; "
                  f"infimum {exc.infimum})")
            continue
        splits = ", ".join(f"{'+'.join(map(str, s))}: {c}" for s, c in sorted(r.by_split().items()))
        print(f"  n={n}: V = {r.value}  ({float(r.value):.6f}), {r.multiplicity} optimal set(s)"
              + (f"  [points per side {splits}]" if constraint.name == "triangle" else "")
              + ("  [the point may sit anywhere on the arc]" if r.continuum else ""))
        first = r.optima[0]
        print("        " + "  ".join(str(p) for p in first.points))


def main():
    table(uniform_seven(), semicircle())
    table(uniform_seven(), triangle())
    table(nonuniform_seven(), semicircle(), 3)
    table(nonuniform_seven(), triangle())

    # The point set that is optimal for the uniform measure at n = 4 is a
    # natural guess for the geometric weights too; its distortion there is
    # well above the true optimum.
    guess = [Point.from_xy(x, y) for x, y in
             (("-3", "0"), ("-21/8", "3*sqrt(3)/8"), ("19/8", "5*sqrt(3)/8"), ("23/8", "sqrt(3)/8"))]
    d = distortion(nonuniform_seven(), guess)
    best = solve_finite(nonuniform_seven(), triangle(), 4).value
    print(f"\nuniform n=4 optimum under the geometric weights: {d} vs optimum {best} "
          f"(excess {d - best} = {float(d - best):.4f})")
    assert d > best and isinstance(best, Fraction)


if __name__ == "__main__":
    main()
