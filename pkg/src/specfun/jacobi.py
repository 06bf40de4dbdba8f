"""Jacobi functions phi_lambda^{(alpha, beta)}(t) = 2F1((rho0+i lambda)/2, (rho0-i lambda)/2; alpha+1; -sinh^2 t)."""
import logging
import math
from typing import Iterable, Optional, Tuple

import numpy as np

from src.config import config
from src.errors import DomainError
from src.models.params import JacobiParams
from src.numerics.sweeps import parallel_map
from src.specfun.hypergeometric import hyp2f1, hyp2f1_derivative, negative_axis_table

logger = logging.getLogger(__name__)

CHUNK_SIZE = 64


def _upper_parameters(p: JacobiParams, lam: complex) -> Tuple[complex, complex]:
    w = 1j * complex(lam)
    return (p.rho0 + w) / 2, (p.rho0 - w) / 2


def jacobi_phi(p: JacobiParams, lam: complex, t: float) -> complex:
    """Jacobi function; even in lambda and equal to 1 at t = 0."""
    if t < 0:
        raise DomainError(f"t must be >= 0, got {t}")
    a, b = _upper_parameters(p, lam)
    return hyp2f1(a, b, p.alpha + 1, -math.sinh(t) ** 2, rtol=config.ode_rtol)


def jacobi_phi_derivative(p: JacobiParams, lam: complex, t: float) -> complex:
    """d/dt of the Jacobi function."""
    if t < 0:
        raise DomainError(f"t must be >= 0, got {t}")
    a, b = _upper_parameters(p, lam)
    return hyp2f1_derivative(a, b, p.alpha + 1, -math.sinh(t) ** 2) * (-math.sinh(2 * t))


def canonical_lambda(lambdas: np.ndarray) -> np.ndarray:
    """Representative of {lambda, -lambda} with Re > 0, or Re = 0 and Im >= 0."""
    lam = np.asarray(lambdas, dtype=complex)
    flip = (lam.real < 0) | ((lam.real == 0) & (lam.imag < 0))
    return np.where(flip, -lam, lam)


def jacobi_table(
    p: JacobiParams,
    lambdas: Iterable[complex],
    ts: Iterable[float],
    threads: Optional[int] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """Jacobi functions and their t-derivatives on a lambda x t grid.

    Lambdas are reduced to canonical representatives of +-lambda, sorted and split
    into chunks of CHUNK_SIZE, so values do not depend on the thread count and
    phi_lambda and phi_{-lambda} are bitwise equal.

    Returns:
        (values, derivatives), both of shape (len(lambdas), len(ts))
    """
    lam = np.asarray(list(lambdas) if not isinstance(lambdas, np.ndarray) else lambdas, dtype=complex)
    t = np.asarray(list(ts) if not isinstance(ts, np.ndarray) else ts, dtype=float)
    lam_shape = lam.shape
    lam = lam.reshape(-1)
    t = t.reshape(-1)
    if t.size and np.min(t) < 0:
        raise DomainError("t must be >= 0")
    if lam.size == 0 or t.size == 0:
        empty = np.zeros((lam.size, t.size), dtype=complex)
        return empty, empty.copy()

    unique_lam, lam_index = np.unique(canonical_lambda(lam), return_inverse=True)
    unique_t, t_index = np.unique(t, return_inverse=True)
    chunks = [unique_lam[i:i + CHUNK_SIZE] for i in range(0, unique_lam.size, CHUNK_SIZE)]
    c = p.alpha + 1

    def run(chunk: np.ndarray) -> Tuple[np.ndarray, np.ndarray]:
        w = 1j * chunk
        return negative_axis_table((p.rho0 + w) / 2, (p.rho0 - w) / 2, c, unique_t, config.ode_rtol)

    logger.debug(f"Jacobi table ({p.alpha}, {p.beta}): {unique_lam.size} lambdas x {unique_t.size} nodes")
    results = parallel_map(run, chunks, threads=threads)
    values = np.concatenate([r[0] for r in results], axis=0)
    derivs = np.concatenate([r[1] for r in results], axis=0)
    values = values[lam_index.reshape(-1)][:, t_index.reshape(-1)]
    derivs = derivs[lam_index.reshape(-1)][:, t_index.reshape(-1)]
    return values.reshape(lam_shape + t.shape), derivs.reshape(lam_shape + t.shape)
