"""Exact-arithmetic weighted Hurwitz numbers and hypergeometric tau-functions."""

from .exactalg import BetaSeries, GradedPoly, LaurentWindow, Rational
from .partitions import Partition, enumerate_partitions
from .weights import WeightFamily, belyi, exponential, quantum, signed

__version__ = "0.1.0"

__all__ = [
    "BetaSeries",
    "GradedPoly",
    "LaurentWindow",
    "Partition",
    "Rational",
    "WeightFamily",
    "belyi",
    "enumerate_partitions",
    "exponential",
    "quantum",
    "signed",
    "__version__",
]
