"""Symmetric binary hypothesis testing between quantum states.

Exact Helstrom errors, the quantum Chernoff bound, its classical embedding
and a classical Chernoff solver that handles distributions with different
supports.
"""

from .classical import ChernoffResult, chernoff, product_min_error
from .estimators import HelstromTest, LikelihoodRatioTest, QuantumChernoffBound
from .exceptions import (
    ConvergenceError,
    EmptyArcError,
    PreconditionError,
    QChernoffError,
    SizeCapError,
    ValidationError,
)
from .nsmap import NSPair, error_floor, ns_distributions
from .quantum import QCBResult, a_hat, helstrom_test, min_error_exact, qcb
from .states import DensityMatrix, StatePair, random_density, validate_density

__version__ = "0.1.0"

__all__ = [
    "ChernoffResult",
    "ConvergenceError",
    "DensityMatrix",
    "EmptyArcError",
    "HelstromTest",
    "LikelihoodRatioTest",
    "NSPair",
    "PreconditionError",
    "QCBResult",
    "QChernoffError",
    "QuantumChernoffBound",
    "SizeCapError",
    "StatePair",
    "ValidationError",
    "a_hat",
    "chernoff",
    "error_floor",
    "helstrom_test",
    "min_error_exact",
    "ns_distributions",
    "product_min_error",
    "qcb",
    "random_density",
    "validate_density",
]
