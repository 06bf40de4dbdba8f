"""Legendre functions of the first kind P_nu(x), x >= 1, for complex degree."""
import math

import numpy as np

from src.config import config
from src.errors import DomainError
from src.specfun.hypergeometric import hyp2f1

# int_0^pi (x - sqrt(x^2-1) cos theta)^nu dtheta = MEHLER_CONSTANT * P_nu(x)
MEHLER_CONSTANT = math.pi


def legendre_p(nu: complex, x: float) -> complex:
    """P_nu(x) = 2F1(-nu, nu+1; 1; (1-x)/2).

    Invariant under nu -> -nu-1 bitwise, since 2F1 canonicalizes its upper parameters.
    """
    x = float(x)
    if not x >= 1:
        raise DomainError(f"legendre_p needs x >= 1, got {x}")
    if x == 1:
        return 1 + 0j
    nu = complex(nu)
    return hyp2f1(-nu, nu + 1, 1, (1 - x) / 2, rtol=config.ode_rtol)


def mehler_integral(nu: complex, x: float, n_points: int = 4096) -> complex:
    """Laplace integral int_0^pi (x - sqrt(x^2-1) cos theta)^nu dtheta by the periodic trapezoid rule."""
    if not x >= 1:
        raise DomainError(f"mehler_integral needs x >= 1, got {x}")
    theta = 2 * math.pi * np.arange(n_points) / n_points
    base = x - math.sqrt(x * x - 1) * np.cos(theta)
    return complex(math.pi * np.mean(np.exp(complex(nu) * np.log(base))))
