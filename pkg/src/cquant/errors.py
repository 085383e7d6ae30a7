"""Exception types raised by the solver library."""


class QuantizationError(Exception):
    """Base class for all library errors."""


class EmptyCodebook(QuantizationError, ValueError):
    """A distortion was requested for an empty set of points."""


class OutOfRange(QuantizationError, ValueError):
    """A curve parameter lies outside the range of its piece."""


class NotOnSubarc(QuantizationError, ValueError):
    """An inverse lifting map was applied to a point off its admissible sub-segment."""


class PrecisionInsufficient(QuantizationError, ArithmeticError):
    """The working mantissa cannot resolve the quantities a computation depends on."""


class NoOptimalSet(QuantizationError):
    """No n-point set exists in which every point owns a positive-mass Voronoi cell.

    ``max_supported_n`` is the largest codebook size for which an optimal set
    exists, and ``infimum`` the nth quantization error (still well defined as an
    infimum over sets of at most n points).
    """

    def __init__(self, n, max_supported_n, infimum=None):
        self.n = n
        self.max_supported_n = max_supported_n
        self.infimum = infimum
        super().__init__(
            f"no optimal set of {n} points exists "
            f"(optimal sets exist only for n <= {max_supported_n})"
        )
