"""Brute-force float64 cross-check that knows nothing about cell structure.

Codebook points are placed on a parameter grid over every piece of the
constraint (t on segments, theta on arcs), every multiset of n grid points is
scored with nearest-point distortion, and the winner is polished by
coordinate descent with a bracket that shrinks eightfold per round.  Random
restarts (seeded) are polished the same way.

For the reciprocal measure the atoms 1/k with k <= truncation are kept and an
upper bound on the dropped mass's contribution is added, so the reported
value stays an upper bound on the true distortion.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import ArcConstraint


@dataclass(frozen=True)
class OracleConfig:
    resolution: int = 64
    rounds: int = 4
    restarts: int = 8
    seed: int = 0
    truncation: int = 64
    max_exhaustive_n: int = 4

    def __post_init__(self):
        if self.resolution < 64:
            raise ValueError("resolution must be at least 64")
        if self.rounds < 2:
            raise ValueError("at least two refinement rounds are required")
        if self.restarts < 0:
            raise ValueError("restarts must be nonnegative")


@dataclass
class OracleResult:
    points: list
    value: float
    params: list
    tail_bound: float = 0.0


def _atoms(measure, truncation):
    if measure.is_finite:
        s = np.array([float(x) for x in measure.support])
        w = np.array([float(x) for x in measure.weights])
        return s, w, 0.0
    k = np.arange(1, truncation + 1, dtype=float)
    return 1.0 / k, 0.5**k, 0.5**truncation


class _Curve:
    """Float evaluation of constraint pieces."""

    def __init__(self, constraint):
        self.kinds, self.data = [], []
        for piece in constraint.pieces:
            if isinstance(piece, ArcConstraint):
                self.kinds.append("arc")
                self.data.append(piece.as_floats())
            else:
                self.kinds.append("seg")
                (x0, y0), (x1, y1) = piece.as_floats()
                self.data.append((x0, y0, x1, y1))

    @property
    def pieces(self):
        return len(self.kinds)

    def ranges(self, i):
        if self.kinds[i] == "arc":
            _, _, lo, hi = self.data[i]
            return lo, hi
        return 0.0, 1.0

    def xy(self, i, u):
        u = np.asarray(u, dtype=float)
        if self.kinds[i] == "arc":
            cx, r, _, _ = self.data[i]
            return cx + r * np.cos(u), r * np.sin(u)
        x0, y0, x1, y1 = self.data[i]
        return x0 + u * (x1 - x0), y0 + u * (y1 - y0)


def _dist(s, x, y):
    """Matrix of squared distances, candidates by atoms."""
    return (s[None, :] - np.asarray(x)[:, None]) ** 2 + np.asarray(y)[:, None] ** 2


def _score(s, w, xs, ys):
    return float(np.min(_dist(s, xs, ys), axis=0) @ w)


def _exhaustive(D, w, n):
    """Best multiset of n rows of D (candidates x atoms) under min-aggregation."""
    C = D.shape[0]
    if n == 1:
        v = D @ w
        i = int(np.argmin(v))
        return float(v[i]), (i,)
    M = np.minimum(D[:, None, :], D[None, :, :])
    if n == 2:
        v = M @ w
        i, j = np.unravel_index(int(np.argmin(v)), v.shape)
        return float(v[i, j]), (int(i), int(j))
    best, arg = np.inf, None
    if n == 3:
        for c in range(C):
            v = np.minimum(M[: c + 1, : c + 1], D[c]) @ w
            k = int(np.argmin(v))
            if v.flat[k] < best:
                a, b = np.unravel_index(k, v.shape)
                best, arg = float(v.flat[k]), (int(a), int(b), c)
        return best, arg
    if n == 4:
        for c in range(C):
            sub = M[: c + 1, : c + 1][None]
            for d0 in range(c, C, 16):
                pair = M[c, d0 : d0 + 16][:, None, None, :]
                v = np.minimum(sub, pair) @ w
                k = int(np.argmin(v))
                if v.flat[k] < best:
                    dd, a, b = np.unravel_index(k, v.shape)
                    best, arg = float(v.flat[k]), (int(a), int(b), c, d0 + int(dd))
        return best, arg
    raise ValueError("exhaustive search supports n <= 4")


def _refine(curve, s, w, config, params, h0):
    """Coordinate descent over (piece, parameter) pairs with shrinking brackets."""
    params = list(params)
    xs = np.empty(len(params))
    ys = np.empty(len(params))
    for j, (i, u) in enumerate(params):
        xs[j], ys[j] = curve.xy(i, u)
    value = _score(s, w, xs, ys)
    R = config.resolution
    for rnd in range(config.rounds):
        h = h0 / 8**rnd
        for j in range(len(params)):
            others = np.min(_dist(s, np.delete(xs, j), np.delete(ys, j)), axis=0) \
                if len(params) > 1 else np.full_like(s, np.inf)
            best_j = (value, params[j], xs[j], ys[j])
            for i in range(curve.pieces):
                lo, hi = curve.ranges(i)
                span = hi - lo
                centre = params[j][1] if params[j][0] == i else None
                if centre is None:
                    grid = np.linspace(lo, hi, R)
                else:
                    grid = np.linspace(max(lo, centre - h * span), min(hi, centre + h * span), R)
                gx, gy = curve.xy(i, grid)
                vals = np.minimum(_dist(s, gx, gy), others) @ w
                k = int(np.argmin(vals))
                if vals[k] < best_j[0]:
                    best_j = (float(vals[k]), (i, float(grid[k])), float(gx[k]), float(gy[k]))
            value, params[j], xs[j], ys[j] = best_j
    return value, params, xs, ys


def grid_search(measure, constraint, n: int, config: OracleConfig | None = None) -> OracleResult:
    """Best codebook found by grid enumeration plus refinement (an upper bound on V_n)."""
    config = config or OracleConfig()
    if n < 1:
        raise ValueError("n must be positive")
    curve = _Curve(constraint)
    s, w, tail_mass = _atoms(measure, config.truncation)
    R = config.resolution
    cand = []
    for i in range(curve.pieces):
        lo, hi = curve.ranges(i)
        for u in np.linspace(lo, hi, R):
            cand.append((i, float(u)))
    cx = np.empty(len(cand))
    cy = np.empty(len(cand))
    for c, (i, u) in enumerate(cand):
        cx[c], cy[c] = curve.xy(i, u)
    D = _dist(s, cx, cy)

    starts = []
    if n <= config.max_exhaustive_n:
        _, arg = _exhaustive(D, w, n)
        starts.append(([cand[c] for c in arg], 2.0 / (R - 1)))
    rng = np.random.default_rng(config.seed)
    for _ in range(config.restarts):
        picks = rng.integers(0, len(cand), size=n)
        starts.append(([cand[int(c)] for c in picks], 0.5))

    best = None
    for params, h0 in starts:
        value, params, xs, ys = _refine(curve, s, w, config, params, h0)
        key = (value, tuple(params))
        if best is None or key < best[0]:
            best = (key, params, xs, ys)
    (value, _), params, xs, ys = best
    bound = 0.0
    if tail_mass:
        # atoms beyond the truncation sit in (0, 1/(T+1)]; each is within
        # |p| + 1/(T+1) of any point p
        norms = np.sqrt(xs**2 + ys**2)
        bound = float(tail_mass * (np.min(norms) + 1.0 / (config.truncation + 1)) ** 2)
    points = [(float(x), float(y)) for x, y in zip(xs, ys)]
    return OracleResult(points, value + bound, params, bound)


def hausdorff(a, b) -> float:
    """Hausdorff distance between two finite planar point sets."""
    A = np.asarray(a, dtype=float)
    B = np.asarray(b, dtype=float)
    d = np.sqrt(((A[:, None, :] - B[None, :, :]) ** 2).sum(axis=2))
    return float(max(d.min(axis=1).max(), d.min(axis=0).max()))
