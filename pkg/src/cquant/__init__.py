"""Optimal constrained quantization of discrete measures on arcs and segment chains."""

from .errors import (
    EmptyCodebook,
    NoOptimalSet,
    NotOnSubarc,
    OutOfRange,
    PrecisionInsufficient,
    QuantizationError,
)
from .geometry import ArcConstraint, Point, Segment, SegmentChain, u1, u2
from .measure import (
    FiniteDiscreteMeasure,
    ReciprocalGeometricMeasure,
    distortion,
    nonuniform_seven,
    uniform_seven,
)
from .solver import QuantizerResult, solve, solve_finite, solve_infinite, sweep_infinite

__version__ = "0.1.0"

__all__ = [
    "ArcConstraint",
    "EmptyCodebook",
    "FiniteDiscreteMeasure",
    "NoOptimalSet",
    "NotOnSubarc",
    "OutOfRange",
    "Point",
    "PrecisionInsufficient",
    "QuantizationError",
    "QuantizerResult",
    "ReciprocalGeometricMeasure",
    "Segment",
    "SegmentChain",
    "distortion",
    "nonuniform_seven",
    "solve",
    "solve_finite",
    "solve_infinite",
    "sweep_infinite",
    "u1",
    "u2",
    "uniform_seven",
]
