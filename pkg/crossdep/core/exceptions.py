"""
Exceptions for crossdep.

Computational failures map to exit code 1, bad input to exit code 2.
"""

from typing import Any, Dict, Optional


class CrossDepError(Exception):
    """Base exception for every error raised by crossdep."""

    exit_code: int = 1

    def __init__(self, message: str, details: Optional[Dict[str, Any]] = None):
        self.message = message
        self.details = details or {}
        super().__init__(self.message)

    def __str__(self) -> str:
        for key in ("method", "unit", "line"):
            if key in self.details:
                return f"{key} {self.details[key]}: {self.message}"
        return self.message

    def tagged(self, **context: Any) -> "CrossDepError":
        """Attach context (unit index, method name, ...) without losing existing tags."""
        for key, value in context.items():
            self.details.setdefault(key, value)
        return self


class ComputationError(CrossDepError):
    """Raised when a statistic cannot be computed from otherwise valid input."""

    exit_code = 1


class InputError(CrossDepError):
    """Raised when user-supplied data, arguments, or configuration are invalid."""

    exit_code = 2


class RankDeficient(ComputationError):
    """Raised when a unit's regressor matrix does not have full column rank."""
    pass


class DimensionMismatch(ComputationError, ValueError):
    """Raised when array shapes disagree."""
    pass


class DegenerateResidual(ComputationError):
    """Raised when a unit's residual vector is identically zero."""
    pass


class NumericalError(ComputationError):
    """Raised when floating-point results leave their mathematical range."""
    pass


class NonPositiveVariance(ComputationError):
    """Raised when the plug-in variance of the sum statistic is not positive."""
    pass


class ZeroTrace(ComputationError):
    """Raised when the column sample covariance has (numerically) zero trace."""
    pass


class DegenerateDiagonal(ComputationError):
    """Raised when the column sample covariance has a nonpositive diagonal entry."""
    pass


class ZeroMatrix(ComputationError):
    """Raised when a matrix expected to be nonzero has zero Frobenius norm."""
    pass


class SmallSample(ComputationError):
    """Raised when T - p is too small for a finite-sample correction."""
    pass


class EigenFailure(ComputationError):
    """Raised when the symmetric eigensolver does not converge."""
    pass


class DomainError(InputError, ValueError):
    """Raised when an argument lies outside the domain of a function."""
    pass


class ParseError(InputError):
    """Raised when a panel CSV cannot be parsed."""
    pass


class UnbalancedPanel(InputError):
    """Raised when a unit is missing an observation on the shared time grid."""
    pass


class DuplicateObservation(InputError):
    """Raised when a (unit, time) pair appears more than once."""
    pass


class ConfigError(InputError):
    """Raised when a configuration file or flag combination is invalid."""
    pass
