"""Exception and warning types shared by every module of the toolkit."""
from typing import Any, Optional


class SpectralError(Exception):
    """Base class for all toolkit errors."""


class DomainError(SpectralError, ValueError):
    """Argument lies outside the domain of the operation."""


class PoleError(SpectralError, ZeroDivisionError):
    """Evaluation requested exactly at (or inside the exclusion disc of) a pole."""

    def __init__(self, message: str, point: Optional[Any] = None):
        super().__init__(message)
        self.point = point


class ParameterPole(PoleError):
    """Lower parameter of 2F1 is a non-positive integer."""


class DimensionMismatch(SpectralError, ValueError):
    """Vector lengths do not match the group structure."""


class SingularPoint(SpectralError, ZeroDivisionError):
    """Denominator of a rational map vanishes."""


class ToleranceNotMet(SpectralError, ArithmeticError):
    """Adaptive quadrature could not reach the requested tolerance."""

    def __init__(self, message: str, estimate: Optional[complex] = None, error: Optional[float] = None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class IllConditioned(SpectralError, ArithmeticError):
    """A divisor used to extract coefficients is too small to trust."""


class NotAPole(SpectralError):
    """Residue requested at a point where the function is regular."""


class ConfigError(SpectralError, ValueError):
    """Invalid run configuration."""


class TruncationWarning(UserWarning):
    """A truncated line integral left a tail above tolerance."""


class AliasWarning(UserWarning):
    """Retained angular modes approach the sampling resolution."""
