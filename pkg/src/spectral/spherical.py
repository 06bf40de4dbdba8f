"""Spherical and generalized spherical functions of the disk.

Phi_lambda(r) = 2F1((1+i lambda)/2, (1-i lambda)/2; 1; -sinh^2 r) = P_{-(1+i lambda)/2}(cosh 2r)
is the circle mean of the Poisson power e^{(i lambda+1)<z,w>} at |z| = tanh r; the
kernel of the spectral projection is phi_lambda = 1/2 lambda tanh(pi lambda/2) Phi_lambda.

The angular Fourier components are

    Phi_{lambda,k}(r) = int_{S^1} e^{(i lambda+1)<tanh r, w>} w^k d sigma(w)
                      = (tanh r)^{|k|} (s)_{|k|} / |k|! 2F1(s, 1-s; 1+|k|; -sinh^2 r),  s = (1+i lambda)/2.
"""
import cmath
import math
from typing import Iterable, Optional, Tuple

import numpy as np

from src.disk.geometry import disk_distance, poisson_power_disk
from src.errors import DomainError, PoleError
from src.models.params import JacobiParams
from src.numerics.quadrature import integrate_circle
from src.specfun.gamma import pochhammer
from src.specfun.jacobi import jacobi_phi, jacobi_table
from src.specfun.legendre import legendre_p

CIRCLE_POINTS = 4096


def density_factor(lam: complex) -> complex:
    """1/2 lambda tanh(pi lambda / 2); PoleError at lambda = +-i(2k+1)."""
    lam = complex(lam)
    c = cmath.cosh(math.pi * lam / 2)
    if abs(c) < 1e-14:
        raise PoleError(f"tanh(pi lambda/2) has a pole at lambda={lam}", point=lam)
    return 0.5 * lam * cmath.sinh(math.pi * lam / 2) / c


def _circle_mean(r: float, lam: complex, k: int, n_points: int) -> complex:
    z = math.tanh(r)

    def integrand(theta: np.ndarray) -> np.ndarray:
        return poisson_power_disk(z, np.exp(1j * theta), lam) * np.exp(1j * k * theta)

    return integrate_circle(integrand, n_points)


def spherical_phi_disk(lam: complex, r: float, form: str = "legendre",
                       n_points: int = CIRCLE_POINTS) -> complex:
    """phi_lambda(tanh r) with phi_lambda(0) = 1/2 lambda tanh(pi lambda/2).

    Args:
        form: ``legendre`` (P_{-(1+i lambda)/2}(cosh 2r)) or ``circle`` (mean of the
            Poisson power over the boundary).
    """
    if r < 0:
        raise DomainError(f"r must be >= 0, got {r}")
    lam = complex(lam)
    if form == "legendre":
        core = legendre_p(-(1 + 1j * lam) / 2, math.cosh(2 * r))
    elif form == "circle":
        core = _circle_mean(r, lam, 0, n_points)
    else:
        raise DomainError(f"unknown form {form!r}")
    return density_factor(lam) * core


def phi_disk_table(lambdas: Iterable[complex], rs: Iterable[float],
                   threads: Optional[int] = None) -> np.ndarray:
    """Phi_lambda(r) (without the density factor) on a lambda x r grid."""
    values, _ = jacobi_table(JacobiParams.disk(), lambdas, rs, threads=threads)
    return values


def mode_prefactor(lam: complex, k: int) -> complex:
    """(s)_{|k|} / |k|! with s = (1 + i lambda)/2."""
    k = abs(k)
    return pochhammer((1 + 1j * complex(lam)) / 2, k) / math.factorial(k)


def generalized_spherical(lam: complex, k: int, r: float, form: str = "closed",
                          n_points: int = CIRCLE_POINTS) -> complex:
    """Phi_{lambda,k}(r); depends on |k| only and is entire in lambda.

    Args:
        form: ``closed`` (hypergeometric form) or ``circle`` (Fourier component of the
            Poisson power, for cross-checking).
    """
    if r < 0:
        raise DomainError(f"r must be >= 0, got {r}")
    lam = complex(lam)
    if form == "circle":
        return _circle_mean(r, lam, k, n_points)
    if form != "closed":
        raise DomainError(f"unknown form {form!r}")
    n = abs(k)
    return math.tanh(r) ** n * mode_prefactor(lam, n) * jacobi_phi(JacobiParams.disk_mode(n), lam, r)


def generalized_spherical_table(lambdas: Iterable[complex], k: int, rs: Iterable[float],
                                threads: Optional[int] = None) -> np.ndarray:
    """Phi_{lambda,k}(r) on a lambda x r grid."""
    lam = np.asarray(list(lambdas), dtype=complex)
    r = np.asarray(list(rs), dtype=float)
    n = abs(k)
    values, _ = jacobi_table(JacobiParams.disk_mode(n), lam, r, threads=threads)
    prefactor = np.array([mode_prefactor(x, n) for x in lam])
    return prefactor[:, None] * np.tanh(r)[None, :] ** n * values


def product_formula_disk(lam: complex, z: complex, z_prime: complex,
                         n_points: int = 1024) -> Tuple[complex, complex]:
    """Both sides of int_{S^1} P_lambda(z, w) P_{-lambda}(z', w) d sigma(w) = Phi_lambda(d(z, z'))."""
    lam = complex(lam)

    def integrand(theta: np.ndarray) -> np.ndarray:
        w = np.exp(1j * theta)
        return poisson_power_disk(z, w, lam) * poisson_power_disk(z_prime, w, -lam)

    lhs = integrate_circle(integrand, n_points)
    rhs = legendre_p(-(1 + 1j * lam) / 2, math.cosh(2 * disk_distance(z, z_prime)))
    return lhs, rhs
