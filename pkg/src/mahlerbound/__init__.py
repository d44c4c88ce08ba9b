"""Mahler measures of sparse polynomials, coefficient lower bounds, and
the lattice ordering machinery behind multivariate specialization limits."""

from .errors import (
    ConvergenceFailureError,
    DegreeCapExceededError,
    DimensionMismatchError,
    DimensionTooLargeError,
    ExponentCapError,
    ExponentCollisionError,
    GridTooCoarseError,
    MahlerboundError,
    NonConvergenceError,
    ShellCapExceededError,
    TieDetectedError,
    ZeroPolynomialError,
    ZeroVectorError,
)
from .mahler_uni import (
    MeasureResult,
    Method,
    RootSet,
    find_roots,
    mahler,
    mahler_quadrature,
    mahler_roots,
)
from .sparse_poly import SparseUniPoly, binomial_power

__all__ = [
    "SparseUniPoly",
    "binomial_power",
    "MeasureResult",
    "Method",
    "RootSet",
    "find_roots",
    "mahler",
    "mahler_quadrature",
    "mahler_roots",
    "MahlerboundError",
    "ZeroPolynomialError",
    "ExponentCapError",
    "DegreeCapExceededError",
    "ConvergenceFailureError",
    "NonConvergenceError",
    "DimensionMismatchError",
    "TieDetectedError",
    "ZeroVectorError",
    "ShellCapExceededError",
    "ExponentCollisionError",
    "GridTooCoarseError",
    "DimensionTooLargeError",
]

__version__ = "0.1.0"
