"""Best placement of a single codebook point for one cell of atoms.

For a cell with total weight W, conditional mean Av and conditional error Er,
the distortion of placing its point at p is Er + W * rho(Av, p).  On a segment
that is a quadratic in the parameter t, minimised at the projection of
(Av, 0) clamped to [0, 1].  On an arc centred at (cx, 0) it is C + D cos(theta)
with D = -2 r W (Av - cx), so the optimum sits at an end of the angular range.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .geometry import Angle, ArcConstraint, Point, Segment
from .measure import BlockStats


@dataclass
class CellProblem:
    """Weighted atoms (abscissa, weight) to be served by one point."""

    atoms: list
    piece: object = None

    def __post_init__(self):
        if sum(w for _, w in self.atoms) <= 0:
            raise ValueError("a cell needs positive total weight")

    @classmethod
    def from_block(cls, stats: BlockStats, piece=None) -> "CellProblem":
        """Wrap precomputed block statistics (used for unbounded blocks)."""
        cell = cls.__new__(cls)
        cell.atoms = []
        cell.piece = piece
        cell._stats = (stats.weight, stats.av, stats.er)
        return cell

    def stats(self):
        """(W, Av, Er) of the cell."""
        cached = getattr(self, "_stats", None)
        if cached is not None:
            return cached
        W = sum(w for _, w in self.atoms)
        m1 = sum(w * s for s, w in self.atoms)
        av = m1 / W
        er = sum(w * (s - av) * (s - av) for s, w in self.atoms)
        self._stats = (W, av, er)
        return self._stats


@dataclass
class CellOptimum:
    """Minimiser of one cell's distortion on one piece.

    ``param`` is t for segments and an Angle for arcs.  ``clamped`` marks a
    segment optimum pushed to an end point; ``degenerate_direction`` marks an
    arc cell whose distortion does not depend on the angle at all.
    """

    piece: int
    param: object
    value: object
    point: Point
    clamped: bool = False
    degenerate_direction: bool = False
    alternatives: list = field(default_factory=list)


def _as_stats(cell):
    if isinstance(cell, BlockStats):
        return cell.weight, cell.av, cell.er
    if isinstance(cell, CellProblem):
        return cell.stats()
    return cell  # already a (W, Av, Er) triple


def min_on_segment(cell, piece: Segment, piece_id: int = 0) -> CellOptimum:
    """Optimal point for ``cell`` on a segment; exact when the inputs are rational."""
    W, av, er = _as_stats(cell)
    a, b, c = piece.quadratic(av)
    t = -b / (2 * a)
    clamped = False
    if t <= 0:
        clamped, t = True, Fraction(0)
    elif t >= 1:
        clamped, t = True, Fraction(1)
    value = er + W * ((a * t + b) * t + c)
    return CellOptimum(piece_id, t, value, piece.point_at(t), clamped=clamped)


def min_on_arc(cell, arc: ArcConstraint, piece_id: int = 0) -> CellOptimum:
    """Optimal point for ``cell`` on an arc centred on the axis.

    When D == 0 every angle is optimal; theta_lo is reported and the other
    end and the midpoint are kept in ``alternatives`` for existence checks.
    """
    W, av, er = _as_stats(cell)
    u = av - arc.cx
    C = er + W * (u * u + arc.r * arc.r)
    D = -2 * arc.r * W * u
    lo, hi = arc.theta_lo, arc.theta_hi
    if D > 0:
        theta, degenerate = hi, False
    else:
        theta, degenerate = lo, D == 0
    cos = theta.cos()
    opt = CellOptimum(piece_id, theta, C + D * cos, arc.point_from_cos(cos),
                      degenerate_direction=degenerate)
    if degenerate:
        mid = Angle((lo.radians + hi.radians) / 2,
                    None if lo.pi_multiple is None or hi.pi_multiple is None
                    else (lo.pi_multiple + hi.pi_multiple) / 2)
        opt.alternatives = [arc.point_from_cos(t.cos()) for t in (mid, hi)]
    return opt


def minimize_on_piece(cell, piece, piece_id: int = 0) -> CellOptimum:
    if isinstance(piece, ArcConstraint):
        return min_on_arc(cell, piece, piece_id)
    return min_on_segment(cell, piece, piece_id)


def best_cells(cell, constraint, tolerance=None):
    """Minimum over all pieces of a constraint.

    Returns (value, optima) where optima lists every piece attaining the
    minimum: exactly for rational values, or within the absolute
    ``tolerance`` for high-precision ones.
    """
    opts = [minimize_on_piece(cell, p, i) for i, p in enumerate(constraint.pieces)]
    best = min(o.value for o in opts)
    if tolerance is None:
        winners = [o for o in opts if o.value == best]
    else:
        winners = [o for o in opts if o.value - best <= tolerance]
    return best, winners
