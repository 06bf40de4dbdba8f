"""Quadrature settings, complex spectral grids and envelope certificates."""
from dataclasses import dataclass
from enum import Enum
from typing import Iterable, List

import numpy as np

from src.errors import DomainError


class QuadratureMethod(Enum):
    """Supported one-dimensional rules."""

    ADAPTIVE_GAUSS = "adaptive-gauss"
    PERIODIC_TRAPEZOID = "periodic-trapezoid"


@dataclass(frozen=True)
class QuadratureSpec:
    """Tolerances for integrate_radial."""

    method: QuadratureMethod = QuadratureMethod.ADAPTIVE_GAUSS
    abs_tol: float = 1e-12
    rel_tol: float = 1e-10
    max_subdivisions: int = 200

    def __post_init__(self):
        if not (self.abs_tol > 0 and self.rel_tol > 0):
            raise DomainError("quadrature tolerances must be positive")
        if self.max_subdivisions < 1:
            raise DomainError("max_subdivisions must be >= 1")


@dataclass(frozen=True)
class ComplexGrid:
    """Tensor grid re_points x im_points in the lambda plane."""

    re_points: tuple
    im_points: tuple

    def __post_init__(self):
        for name in ("re_points", "im_points"):
            values = tuple(float(v) for v in getattr(self, name))
            if not values:
                raise DomainError(f"{name} must be non-empty")
            if any(b <= a for a, b in zip(values, values[1:])):
                raise DomainError(f"{name} must be strictly increasing")
            object.__setattr__(self, name, values)

    @classmethod
    def from_ranges(cls, re_min: float, re_max: float, re_step: float,
                    im_min: float, im_max: float, im_step: float) -> "ComplexGrid":
        return cls(tuple(_arange(re_min, re_max, re_step)), tuple(_arange(im_min, im_max, im_step)))

    @classmethod
    def default(cls, im_max: float = 3.0) -> "ComplexGrid":
        """Re in [-12, 12] step 0.5, Im in [-im_max, im_max] step 0.25."""
        return cls.from_ranges(-12.0, 12.0, 0.5, -im_max, im_max, 0.25)

    def points(self, exclude: Iterable[complex] = (), radius: float = 0.2) -> np.ndarray:
        """Grid points in canonical (row-major over im, then re) order, minus pole discs."""
        re, im = np.meshgrid(np.array(self.re_points), np.array(self.im_points))
        lam = (re + 1j * im).ravel()
        poles = np.asarray(list(exclude), dtype=complex)
        if poles.size:
            dist = np.min(np.abs(lam[:, None] - poles[None, :]), axis=1)
            lam = lam[dist > radius]
        return lam

    @property
    def im_bound(self) -> float:
        return max(abs(self.im_points[0]), abs(self.im_points[-1]))


def _arange(lo: float, hi: float, step: float) -> List[float]:
    if step <= 0 or hi < lo:
        raise DomainError(f"invalid range [{lo}, {hi}] step {step}")
    count = int(round((hi - lo) / step)) + 1
    return [round(lo + i * step, 12) for i in range(count)]


def lambda_grid(lambda_max: float, step: float, lambda_min: float = 0.0) -> np.ndarray:
    """Uniform real grid lambda_min, lambda_min + step, ..., lambda_max."""
    return np.array(_arange(lambda_min, lambda_max, step))


@dataclass(frozen=True)
class EnvelopeFit:
    """Certificate C with |value| <= C * envelope on the sampled grid."""

    model_order: int
    fitted_constant: float
    max_violation: float
    n_points: int = 0

    def __post_init__(self):
        if self.fitted_constant < 0:
            raise DomainError("fitted constant must be >= 0")

    @property
    def is_finite(self) -> bool:
        return bool(np.isfinite(self.fitted_constant))

    def to_dict(self) -> dict:
        return {
            "model_order": self.model_order,
            "fitted_constant": self.fitted_constant,
            "max_violation": self.max_violation,
            "n_points": self.n_points,
        }
