"""Central-difference Laplacians and observed convergence orders."""
from enum import Enum
from typing import Callable, Optional, Sequence, Union

import numpy as np

from src.errors import DomainError


class Geometry(Enum):
    EUCLIDEAN_2D = "euclidean-2d"
    RADIAL_1D = "radial-1d"


def laplacian_fd(
    field: Callable,
    at: Union[complex, float],
    h: float,
    geometry: Union[Geometry, str] = Geometry.EUCLIDEAN_2D,
    drift: Optional[Callable[[float], float]] = None,
    domain: Optional[Callable] = None,
) -> complex:
    """Second-order central-difference Laplacian.

    Args:
        field: Function of a point (complex z for euclidean-2d, real rho for radial-1d).
        at: Evaluation point.
        h: Stencil step.
        geometry: ``euclidean-2d`` gives d_xx + d_yy; ``radial-1d`` gives
            d_rho^2 + drift(rho) d_rho.
        drift: First-order coefficient for radial-1d (zero if omitted).
        domain: Predicate every stencil point must satisfy. For radial-1d the
            default requires rho - h > 0.

    Returns:
        The finite-difference value.
    """
    if not h > 0:
        raise DomainError(f"stencil step must be positive, got {h}")
    geometry = Geometry(geometry)

    if geometry is Geometry.EUCLIDEAN_2D:
        z = complex(at)
        points = [z + h, z - h, z + 1j * h, z - 1j * h]
        if domain is not None and not all(domain(p) for p in points + [z]):
            raise DomainError(f"stencil of step {h} at {z} leaves the domain")
        centre = complex(field(z))
        total = sum(complex(field(p)) for p in points)
        return (total - 4 * centre) / h**2

    rho = float(at)
    points = [rho - h, rho, rho + h]
    inside = domain if domain is not None else (lambda x: x > 0)
    if not all(inside(p) for p in points):
        raise DomainError(f"stencil of step {h} at {rho} leaves the domain")
    minus, centre, plus = (complex(field(p)) for p in points)
    second = (plus - 2 * centre + minus) / h**2
    if drift is None:
        return second
    return second + drift(rho) * (plus - minus) / (2 * h)


def convergence_order(residuals: Sequence[float], steps: Sequence[float]) -> float:
    """Least-squares slope of log|residual| against log(step)."""
    residuals = np.abs(np.asarray(residuals, dtype=complex))
    steps = np.asarray(steps, dtype=float)
    if residuals.size != steps.size or residuals.size < 2:
        raise DomainError("need matching residual and step sequences of length >= 2")
    if np.any(residuals == 0):
        return float("inf")
    slope, _ = np.polyfit(np.log(steps), np.log(residuals), 1)
    return float(slope)
