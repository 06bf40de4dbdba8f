"""Spherical functions, spherical transform and radial spectral projection on NA.

Radial functions are integrated against A(rho) d rho with
A(rho) = (2 sinh(rho/2))^{m+k} (2 cosh(rho/2))^k, the density whose logarithmic
derivative is the drift m/2 coth(rho/2) + k coth(rho) of the radial Laplacian.
With this measure

    f(rho) = int_R P_lambda f(rho) d lambda,
    P_lambda f(rho) = (c_{m,k} / 4 pi) |c(lambda)|^{-2} f~(lambda) Phi_lambda(rho),

where c(lambda) = sqrt(c_{m,k}) c_{alpha,beta}(2 lambda) is the calibrated c-function.
"""
import logging
import math
from typing import Iterable, List, Optional, Tuple

import numpy as np

from src.config import config
from src.errors import DomainError
from src.models.params import NAParams
from src.models.profiles import RadialProfile
from src.models.grids import lambda_grid
from src.numerics.quadrature import gauss_legendre, tail_fraction, trapezoid_line
from src.specfun.cfunction import c_function, plancherel_weight
from src.specfun.jacobi import jacobi_phi, jacobi_table

logger = logging.getLogger(__name__)

ArrayLike = Iterable[complex]


def spherical_phi_na(p: NAParams, lam: complex, rho: float) -> complex:
    """Phi_lambda(rho) = phi_{2 lambda}^{(alpha, beta)}(rho / 2)."""
    if rho < 0:
        raise DomainError(f"rho must be >= 0, got {rho}")
    return jacobi_phi(p.jacobi, 2 * complex(lam), rho / 2)


def spherical_phi_table(p: NAParams, lambdas: ArrayLike, rhos: Iterable[float],
                        threads: Optional[int] = None) -> np.ndarray:
    """Phi_lambda(rho) on a lambda x rho grid."""
    lam = 2 * np.asarray(list(lambdas), dtype=complex)
    t = np.asarray(list(rhos), dtype=float) / 2
    values, _ = jacobi_table(p.jacobi, lam, t, threads=threads)
    return values


def radial_density(p: NAParams, rho):
    """A(rho) = (2 sinh(rho/2))^{m+k} (2 cosh(rho/2))^k."""
    rho = np.asarray(rho, dtype=float)
    value = (2 * np.sinh(rho / 2)) ** (p.m + p.k) * (2 * np.cosh(rho / 2)) ** p.k
    return float(value) if value.ndim == 0 else value


def radial_drift(p: NAParams, rho: float) -> float:
    """m/2 coth(rho/2) + k coth(rho)."""
    return p.m / 2 / math.tanh(rho / 2) + p.k / math.tanh(rho)


def eigenvalue(p: NAParams, lam: complex) -> complex:
    """Laplace eigenvalue -(lambda^2 + Q^2/4) of Phi_lambda."""
    return -(complex(lam) ** 2 + p.Q**2 / 4)


def c_calibrated(p: NAParams, lam: complex) -> complex:
    """sqrt(c_{m,k}) c_{alpha,beta}(2 lambda)."""
    return math.sqrt(p.c_mk) * c_function(p.jacobi, lam)


def plancherel_density(p: NAParams, lam: complex) -> complex:
    """(c_{m,k}/4 pi) / (c(lambda) c(-lambda)), entire off the singular set; |c|^{-2} weighting for real lambda."""
    return plancherel_weight(p.jacobi, 2 * complex(lam)) / (4 * math.pi)


def density_singular_set(p: NAParams, im_max: float) -> List[complex]:
    """Poles of the Plancherel density with |Im lambda| <= im_max."""
    alpha, beta, rho0 = p.alpha, p.beta, p.jacobi.rho0
    order = {}
    j_max = int(2 * im_max) + 2
    # poles of Gamma((i mu + rho0)/2) Gamma((i mu + alpha - beta + 1)/2) at mu = 2 lambda
    for shift in (rho0, alpha - beta + 1):
        for j in range(j_max + 1):
            y = round((shift + 2 * j) / 2, 12)
            order[y] = order.get(y, 0) + 1
    # zeros of 1/Gamma(i mu) at i mu = -n
    for y in list(order):
        if abs(2 * y - round(2 * y)) < 1e-12 and round(2 * y) >= 0:
            order[y] -= 1
    poles = sorted(y for y, o in order.items() if o > 0 and 0 < y <= im_max)
    return [complex(0, -y) for y in reversed(poles)] + [complex(0, y) for y in poles]


class RadialQuadrature:
    """Gauss-Legendre rule on [0, R] weighted by A(rho)."""

    def __init__(self, p: NAParams, R: float, n_nodes: Optional[int] = None):
        self.p = p
        self.R = R
        self.nodes, weights = gauss_legendre(0.0, R, n_nodes or config.radial_nodes)
        self.weights = weights * radial_density(p, self.nodes)

    def norm_squared(self, f: RadialProfile) -> float:
        """int |f|^2 A d rho."""
        return float(np.sum(self.weights * np.abs(f(self.nodes)) ** 2))

    def transform(self, f: RadialProfile, lambdas: ArrayLike, threads: Optional[int] = None) -> np.ndarray:
        """f~(lambda) for every lambda."""
        lam = np.asarray(list(lambdas), dtype=complex)
        if f.is_zero:
            return np.zeros(lam.shape, dtype=complex)
        phi = spherical_phi_table(self.p, lam, self.nodes, threads=threads)
        return phi @ (self.weights * f(self.nodes))


def spherical_transform(f: RadialProfile, lam: complex, p: NAParams, n_nodes: Optional[int] = None) -> complex:
    """f~(lambda) = int_0^R f(rho) Phi_lambda(rho) A(rho) d rho; entire and even in lambda."""
    return complex(RadialQuadrature(p, f.support, n_nodes).transform(f, [lam])[0])


def spherical_transform_table(f: RadialProfile, lambdas: ArrayLike, p: NAParams,
                              n_nodes: Optional[int] = None, threads: Optional[int] = None) -> np.ndarray:
    return RadialQuadrature(p, f.support, n_nodes).transform(f, lambdas, threads=threads)


def spectral_projection_radial(f: RadialProfile, lam: complex, rho: float, p: NAParams) -> complex:
    """P_lambda f at distance rho from the identity."""
    lam = complex(lam)
    return plancherel_density(p, lam) * spherical_transform(f, lam, p) * spherical_phi_na(p, lam, rho)


def projection_table(f: RadialProfile, lambdas: ArrayLike, rhos: Iterable[float], p: NAParams,
                     threads: Optional[int] = None) -> np.ndarray:
    """P_lambda f(rho) on a lambda x rho grid."""
    lam = np.asarray(list(lambdas), dtype=complex)
    ft = spherical_transform_table(f, lam, p, threads=threads)
    density = np.array([plancherel_density(p, x) for x in lam])
    phi = spherical_phi_table(p, lam, rhos, threads=threads)
    return (density * ft)[:, None] * phi


def radial_inversion(f: RadialProfile, rhos: Iterable[float], p: NAParams,
                     lambda_max: Optional[float] = None, step: Optional[float] = None,
                     threads: Optional[int] = None) -> Tuple[np.ndarray, float]:
    """Reconstruct f(rho) = int_R P_lambda f(rho) d lambda by the even trapezoid on [0, Lambda].

    Returns:
        (values at rhos, estimated truncated tail)
    """
    lam = lambda_grid(lambda_max or config.lambda_max, step or config.lambda_step)
    h = lam[1] - lam[0]
    table = projection_table(f, lam, rhos, p, threads=threads)
    values = trapezoid_line(table, h, half_line=True, axis=0)
    tail = float(np.max(2 * tail_fraction(table, h, axis=0)))
    return values, tail
