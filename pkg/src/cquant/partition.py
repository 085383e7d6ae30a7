"""Canonical vectors, Voronoi assignment and positive-mass checks.

Voronoi cells of points in the plane are convex, so each one meets the axis
in an interval.  A codebook therefore splits the ordered support into
contiguous blocks, recorded by a composition (n_1, ..., n_k) of the support
size, together with the constraint piece each point lies on.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .errors import EmptyCodebook
from .measure import _nearest, _stable_index, distortion, rho


def compositions(N: int, n: int):
    """Compositions of N into n positive parts, in lexicographic order."""
    if n < 1 or N < n:
        return
    if n == 1:
        yield (N,)
        return
    for first in range(1, N - n + 2):
        for rest in compositions(N - first, n - 1):
            yield (first,) + rest


def weak_compositions(n: int, parts: int):
    """Ways of writing n as an ordered sum of ``parts`` nonnegative integers, lexicographic."""
    if parts == 1:
        yield (n,)
        return
    for first in range(n + 1):
        for rest in weak_compositions(n - first, parts - 1):
            yield (first,) + rest


@dataclass(frozen=True)
class CanonicalVector:
    """Block sizes of the support together with the piece of each block's point."""

    composition: tuple
    labels: tuple

    @property
    def n(self) -> int:
        return len(self.composition)

    def sides(self, pieces: int | None = None) -> tuple:
        """Number of points on each piece."""
        p = pieces if pieces is not None else (max(self.labels) + 1 if self.labels else 0)
        return tuple(self.labels.count(i) for i in range(p))

    def blocks(self):
        """1-based inclusive (start, end) atom ranges of the blocks."""
        out, start = [], 1
        for size in self.composition:
            out.append((start, start + size - 1))
            start += size
        return out

    def as_dict(self, pieces: int | None = None):
        return {
            "composition": list(self.composition),
            "labels": list(self.labels),
            "sides": list(self.sides(pieces)),
        }


def enumerate_canonical(N: int, n: int, pieces: int = 1, ordered: bool = True):
    """Every canonical vector for n points and N atoms over ``pieces`` pieces.

    With ``ordered`` (the default) a side split (l_1, ..., l_p) puts the first
    l_1 blocks on piece 0, the next l_2 on piece 1 and so on, giving
    C(N-1, n-1) * C(n+p-1, p-1) vectors.  With ``ordered=False`` each block
    chooses its piece freely (p**n labellings per composition).
    """
    if not 1 <= n <= N:
        raise ValueError(f"need 1 <= n <= N, got n={n}, N={N}")
    if pieces < 1:
        raise ValueError("at least one piece is required")
    if ordered:
        for split in weak_compositions(n, pieces):
            labels = tuple(i for i, c in enumerate(split) for _ in range(c))
            for comp in compositions(N, n):
                yield CanonicalVector(comp, labels)
    else:
        label_sets = list(itertools.product(range(pieces), repeat=n))
        for comp in compositions(N, n):
            for labels in label_sets:
                yield CanonicalVector(comp, labels)


def canonical_count(N: int, n: int, pieces: int = 1, ordered: bool = True) -> int:
    if ordered:
        return comb(N - 1, n - 1) * comb(n + pieces - 1, pieces - 1)
    return comb(N - 1, n - 1) * pieces**n


@dataclass(frozen=True)
class Assignment:
    """Index of the codebook point serving each atom (atom i at position i-1).

    For the reciprocal measure only the atoms before ``tail_start`` are listed;
    every later atom goes to ``tail_owner``.
    """

    owners: tuple
    tail_start: int | None = None
    tail_owner: int | None = None

    def blocks(self):
        """Maximal runs (owner, first_atom, last_atom); last_atom None for the tail."""
        runs = []
        for i, o in enumerate(self.owners, start=1):
            if runs and runs[-1][0] == o:
                runs[-1][2] = i
            else:
                runs.append([o, i, i])
        if self.tail_start is not None:
            if runs and runs[-1][0] == self.tail_owner:
                runs[-1][2] = None
            else:
                runs.append([self.tail_owner, self.tail_start, None])
        return [tuple(r) for r in runs]

    def is_contiguous(self) -> bool:
        owners = [b[0] for b in self.blocks()]
        return len(owners) == len(set(owners))

    def composition(self):
        return tuple(
            (b[2] - b[1] + 1) if b[2] is not None else None for b in self.blocks()
        )

    def used(self) -> set:
        s = set(self.owners)
        if self.tail_owner is not None:
            s.add(self.tail_owner)
        return s


def voronoi_assign(measure, points, precision: int | None = None):
    """Nearest-point assignment (ties to the lowest index) and the distortion it gives."""
    points = list(points)
    if not points:
        raise EmptyCodebook("cannot assign atoms to an empty codebook")
    if measure.is_finite:
        owners = tuple(_nearest(s, points)[0] for s in measure.support)
        return Assignment(owners), distortion(measure, points)
    K = _stable_index(points)
    owners = tuple(_nearest(Fraction(1, n), points)[0] for n in range(1, K))
    tail_owner = _nearest(Fraction(1, K), points)[0]
    return Assignment(owners, K, tail_owner), distortion(measure, points, precision)


def positive_mass_cells(measure, points) -> list:
    """For each point, whether its cell (ties resolved to the lowest index) has positive mass."""
    assignment, _ = voronoi_assign(measure, points)
    used = assignment.used()
    return [i in used for i in range(len(points))]


def strictly_owned_cells(measure, points) -> list:
    """For each point, whether it is the unique nearest point of at least one atom.

    This is the tie-break-free version of ``positive_mass_cells``: a point
    passes regardless of how boundary atoms are shared out.
    """
    points = list(points)
    owned = [False] * len(points)

    def visit(s):
        ds = [rho(s, p) for p in points]
        m = min(ds)
        idx = [i for i, d in enumerate(ds) if d == m]
        if len(idx) == 1:
            owned[idx[0]] = True

    if measure.is_finite:
        for s in measure.support:
            visit(s)
    else:
        K = _stable_index(points)
        for n in range(1, K + 1):
            visit(Fraction(1, n))
    return owned
