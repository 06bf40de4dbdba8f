"""Harish-Chandra c-function of Jacobi analysis and its reciprocal.

c_{alpha,beta}(mu) = 2^{rho0 - i mu} Gamma(alpha+1) Gamma(i mu)
                     / [Gamma((i mu + rho0)/2) Gamma((i mu + alpha - beta + 1)/2)]

On NA the spectral parameter is doubled: c(lambda) = c_{alpha,beta}(2 lambda).
"""
import cmath
import math

from src.errors import PoleError
from src.models.params import JacobiParams
from src.specfun.gamma import log_gamma_complex

_LOG2 = math.log(2.0)


def _log_c(p: JacobiParams, mu: complex) -> complex:
    s = 1j * complex(mu)
    return (
        (p.rho0 - s) * _LOG2
        + log_gamma_complex(p.alpha + 1)
        + log_gamma_complex(s)
        - log_gamma_complex((s + p.rho0) / 2)
        - log_gamma_complex((s + p.alpha - p.beta + 1) / 2)
    )


def jacobi_c(p: JacobiParams, mu: complex) -> complex:
    """c_{alpha,beta}(mu); PoleError at mu = 0 and at the other poles of Gamma(i mu)."""
    mu = complex(mu)
    if mu == 0:
        raise PoleError("c-function is singular at 0", point=mu)
    return cmath.exp(_log_c(p, mu))


def inverse_c(p: JacobiParams, mu: complex) -> complex:
    """1/c_{alpha,beta}(mu); vanishes at mu = 0, PoleError at poles of the numerator Gammas."""
    mu = complex(mu)
    if mu == 0:
        return 0j
    s = 1j * mu
    log_value = (
        -(p.rho0 - s) * _LOG2
        - log_gamma_complex(p.alpha + 1)
        + log_gamma_complex((s + p.rho0) / 2)
        + log_gamma_complex((s + p.alpha - p.beta + 1) / 2)
    )
    if s.imag == 0 and s.real <= 0 and s.real == math.floor(s.real):
        return 0j
    return cmath.exp(log_value - log_gamma_complex(s))


def c_function(p: JacobiParams, lam: complex) -> complex:
    """c(lambda) = c_{alpha,beta}(2 lambda)."""
    return jacobi_c(p, 2 * complex(lam))


def plancherel_weight(p: JacobiParams, mu: complex) -> complex:
    """1/(c(mu) c(-mu)); equals |c(mu)|^{-2} for real mu and stays finite at mu = 0."""
    return inverse_c(p, mu) * inverse_c(p, -mu)
