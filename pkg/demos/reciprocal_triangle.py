"""The measure with mass 2**-k at 1/k, quantized on two sides of a triangle.

The unit triangle has base [0, 1] and apex (1/2, sqrt(3)/2).  A codebook
splits the atoms into consecutive blocks, the last one an infinite tail.
Each block is served by the foot-preserving lift of its conditional mean
onto one of the two sides, and the cost of that lift is an explicit penalty
on top of the unconstrained block error.  The demo

  1. prints the tail constants,
  2. solves n = 1..12 through a penalized DP and through the unconstrained
     DP followed by lifting, and checks the two agree,
  3. shows the two co-optimal codebooks for n = 3 (the atom 1/2 sits exactly
     halfway, so both sides cost the same), and
  4. checks the predicted block pattern {1}, ..., {n-2}, {n-1, n}, [n+1, oo)
     of the unconstrained optimum for larger n.

    python3 demos/reciprocal_triangle.py
"""

from cquant._numbers import format_decimal
from cquant.measure import ReciprocalGeometricMeasure
from cquant.solver import InfiniteSweep, predicted_blocks


def label(blocks):
    return " ".join(f"{{{a}}}" if a == b else f"[{a},oo)" if b is None else f"[{a},{b}]"
                    for a, b in blocks)


def main():
    m = ReciprocalGeometricMeasure(256)
    tail = m.block(1)
    print("Av[1, oo) =", format_decimal(tail.av, 40), "(= log 2)")
    print("Er[1, oo) =", format_decimal(tail.er, 40))

    sweep = InfiniteSweep(40, 256)
    print("\n n  V_n (constrained)        routes agree  blocks / sides")
    for n in range(1, 13):
        r = sweep.solve(n)
        o = r.optima[0]
        print(f"{n:2d}  {format_decimal(r.value, 18):<24} {str(not r.disagreement):<13} "
              f"{label(o.blocks)}  {' '.join(o.piece_names)}")

    print("\nn = 3 optima:")
    for o in sweep.solve(3).optima:
        print("   ", "  ".join(str(p) for p in o.points), "  sides", o.piece_names)

    mismatches = [n for n in range(6, 41) if sweep.uncon.argmin_blocks(n) != [tuple(predicted_blocks(n))]]
    print("\nunconstrained block pattern holds for n = 6..40:", not mismatches)
    print("doubling the boundary window changes nothing:", sweep.validate_window())


if __name__ == "__main__":
    main()
