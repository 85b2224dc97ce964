"""Exception hierarchy shared by every module.

Each class carries the CLI exit code it maps to.
"""


class QChernoffError(Exception):
    """Base class for all errors raised by qchernoff."""

    exit_code = 1


class ValidationError(QChernoffError, ValueError):
    """Input failed a domain check (Hermiticity, positivity, normalization...)."""

    exit_code = 2


class PreconditionError(ValidationError):
    """An operation was called outside the regime where it is defined."""


class EmptyArcError(ValidationError):
    """The common support of two distributions is empty."""


class SizeCapError(QChernoffError):
    """A tensor power or enumeration would exceed the configured size cap."""

    exit_code = 3

    def __init__(self, message: str, requested: int, cap: int):
        super().__init__(message)
        self.requested = requested
        self.cap = cap


class ConvergenceError(QChernoffError, ArithmeticError):
    """An iterative numerical routine failed to converge."""

    exit_code = 4

    def __init__(self, message: str, residual: float = float("nan")):
        super().__init__(message)
        self.residual = residual


class InvariantViolation(QChernoffError, ArithmeticError):
    """A computed quantity broke an inequality it must satisfy."""

    exit_code = 4
