"""Exception types shared across the package."""


class MahlerboundError(Exception):
    """Base class for all package-specific failures."""


class ZeroPolynomialError(MahlerboundError):
    """An operation produced (or was handed) the identically zero polynomial."""


class ExponentCapError(MahlerboundError):
    """An exponent exceeds the cap that keeps dense expansions bounded."""


class DegreeCapExceededError(MahlerboundError):
    """Dense degree exceeds the configured cap for root-based computation."""


class ConvergenceFailureError(MahlerboundError):
    """Root polishing stalled before reaching the residual target."""


class NonConvergenceError(MahlerboundError):
    """Quadrature hit its grid cap while successive estimates still disagreed.

    ``best_value`` carries the final (unaccepted) estimate and ``last_gap``
    the final inter-grid difference, so callers can still inspect them.
    """

    def __init__(self, message: str, *, best_value=None, last_gap=None):
        super().__init__(message)
        self.best_value = best_value
        self.last_gap = last_gap


class DimensionMismatchError(MahlerboundError):
    """Vector arguments have incompatible dimensions."""


class TieDetectedError(MahlerboundError):
    """Two support points have numerically indistinguishable direction values.

    Raised instead of silently picking an order: floating point cannot
    certify that the direction coordinates are rationally independent.
    """


class ZeroVectorError(MahlerboundError):
    """The zero lattice point was passed where a nonzero one is required."""


class ShellCapExceededError(MahlerboundError):
    """Shell enumeration ran past its cap without finding an orthogonal vector."""

    def __init__(self, message: str, *, cap: int):
        super().__init__(message)
        self.cap = cap


class ExponentCollisionError(MahlerboundError):
    """Two support points specialize to the same univariate exponent."""


class GridTooCoarseError(MahlerboundError):
    """Requested grid cannot resolve the polynomial's frequency range."""


class DimensionTooLargeError(MahlerboundError):
    """Direct torus quadrature is limited to three variables."""
