"""Plancherel identity, density consistency and Paley-Wiener certificates on the disk."""
import logging
import math
import warnings
from typing import Iterable, Optional, Tuple

import numpy as np

from src.config import config
from src.disk.geometry import disk_distance
from src.errors import TruncationWarning
from src.models.grids import ComplexGrid, EnvelopeFit, lambda_grid
from src.models.params import JacobiParams
from src.models.profiles import SO2FiniteFunction
from src.numerics.envelope import envelope_fit
from src.numerics.quadrature import gauss_legendre, tail_fraction, trapezoid_line
from src.spectral.closed_form import COEFFICIENT_NODES, closed_form_table, poles_in_strip
from src.spectral.modes import disk_l2_norm
from src.spectral.spherical import generalized_spherical_table
from src.specfun.cfunction import plancherel_weight

logger = logging.getLogger(__name__)

TAIL_TOLERANCE = 1e-3


def mode_coefficient_table(f: SO2FiniteFunction, lambdas: Iterable[complex],
                           threads: Optional[int] = None) -> np.ndarray:
    """a_{lambda,n} of the centred function for every lambda (rows) and mode of f (columns)."""
    lam = np.asarray(list(lambdas), dtype=complex)
    out = np.zeros((lam.size, len(f.modes)), dtype=complex)
    for j, (n, profile) in enumerate(f.modes.items()):
        if profile.is_zero:
            continue
        nodes, weights = gauss_legendre(0.0, profile.support, COEFFICIENT_NODES)
        phi = generalized_spherical_table(-lam, n, nodes, threads=threads)
        out[:, j] = math.pi * phi @ (weights * profile(nodes) * np.sinh(2 * nodes))
    return out


def plancherel_check_disk(f: SO2FiniteFunction, lambda_max: Optional[float] = None,
                          step: Optional[float] = None, threads: Optional[int] = None) -> Tuple[float, float]:
    """Both sides of int_D |f|^2 d mu = (1/2 pi) int_0^inf sum_n |a_{lambda,n}|^2 lambda tanh(pi lambda/2) d lambda.

    The inner sum is int_{S^1} |f^(lambda, w)|^2 d sigma(w); both sides are invariant
    under the isometry moving the centre of f to the origin.
    """
    lhs = disk_l2_norm(f) ** 2
    if lhs == 0:
        return 0.0, 0.0
    lam = lambda_grid(lambda_max or config.lambda_max, step or config.lambda_step)
    h = lam[1] - lam[0]
    coeffs = mode_coefficient_table(f.centred(), lam, threads=threads)
    integrand = np.sum(np.abs(coeffs) ** 2, axis=1) * lam * np.tanh(math.pi * lam / 2)
    rhs = float(trapezoid_line(integrand, h)) / (2 * math.pi)
    tail = float(tail_fraction(integrand, h)) / (2 * math.pi)
    if tail > TAIL_TOLERANCE * rhs:
        logger.warning(f"Disk Plancherel: truncated tail {tail:.3g} against {rhs:.3g}")
        warnings.warn(f"Plancherel truncation at lambda={lam[-1]} leaves tail {tail:.3g}", TruncationWarning)
    logger.debug(f"Disk Plancherel: lhs={lhs:.12g} rhs={rhs:.12g}")
    return lhs, rhs


def density_consistency(lambdas: Iterable[float]) -> Tuple[np.ndarray, float]:
    """Ratio |c_{0,0}(lambda)|^{-2} / (lambda tanh(pi lambda/2)) and its relative standard deviation.

    The ratio is pi/2 for every lambda when the Jacobi c-function of parameters
    (0, 0) reproduces the disk density.
    """
    lam = np.asarray(list(lambdas), dtype=float)
    weight = np.array([plancherel_weight(JacobiParams.disk(), x).real for x in lam])
    ratio = weight / (lam * np.tanh(math.pi * lam / 2))
    return ratio, float(np.std(ratio) / abs(np.mean(ratio)))


def pw_envelope_disk(f: SO2FiniteFunction, grid: ComplexGrid, N: int, z: complex,
                     radius: float = 0.2, threads: Optional[int] = None) -> EnvelopeFit:
    """Certificate c_N with |P_lambda f(z)| <= c_N (1+|lambda|)^{-N} e^{(R + d(z, z0)) |Im lambda|}.

    Grid points within ``radius`` of a pole are excluded.
    """
    z = complex(z)
    lowest = min(abs(n) for n in f.mode_numbers)
    lams = grid.points(exclude=poles_in_strip(lowest, grid.im_bound), radius=radius)
    values = closed_form_table(f, lams, [z], threads=threads)[:, 0]
    d = disk_distance(z, f.z0)
    return envelope_fit((lams, np.abs(values)), N, f.R, d, squared=False)
