"""SO(2) mode analysis on the disk: angular decomposition, radialization and eigenfunction expansions."""
import logging
import math
import warnings
from typing import Callable, Optional, Union

import numpy as np

from src.disk.laplacian import laplacian_disk_apply
from src.errors import AliasWarning, DomainError, IllConditioned
from src.models.params import JacobiParams
from src.models.profiles import RadialProfile, SO2FiniteFunction, angle_grid
from src.models.reports import EigenExpansion, PolarSamples
from src.numerics.quadrature import gauss_legendre
from src.specfun.jacobi import jacobi_phi, jacobi_table

logger = logging.getLogger(__name__)

MODE_MASS_TOL = 1e-12
RADIAL_FACTOR_MIN = 1e-10
EIGEN_CHECK_STEP = 1e-3
EIGEN_CHECK_TOL = 1e-2


def so2_decompose(samples: PolarSamples, support: Optional[float] = None,
                  rel_tol: float = MODE_MASS_TOL) -> SO2FiniteFunction:
    """Discrete angular Fourier modes of a sampled function.

    Modes carrying less than ``rel_tol`` of the total mass sum_r |f_n(r)|^2 are
    dropped. AliasWarning when a retained mode exceeds a quarter of the angular
    resolution.
    """
    n_theta = samples.n_theta
    freqs = np.rint(np.fft.fftfreq(n_theta) * n_theta).astype(int)
    coeffs = np.fft.fft(samples.values, axis=1) / n_theta
    coeffs = coeffs * np.exp(-1j * freqs * samples.theta0)[None, :]
    mass = np.sum(np.abs(coeffs) ** 2, axis=0)
    support = float(support if support is not None else samples.r[-1])
    total = float(np.sum(mass))
    if total == 0:
        return SO2FiniteFunction.zero(support)

    keep = [int(i) for i in np.argsort(freqs) if mass[i] >= rel_tol * total]
    highest = max(abs(freqs[i]) for i in keep)
    if highest > n_theta // 4:
        logger.warning(f"Mode {highest} retained with only {n_theta} angular samples")
        warnings.warn(f"mode {highest} is close to the angular resolution {n_theta}", AliasWarning)
    modes = {int(freqs[i]): RadialProfile.from_samples(samples.r, coeffs[:, i], support=support) for i in keep}
    logger.debug(f"Decomposed {samples.values.shape} samples into modes {sorted(modes)}")
    return SO2FiniteFunction(modes, support)


def radialize(f: Union[SO2FiniteFunction, PolarSamples]) -> SO2FiniteFunction:
    """Angular average M f, the mode-0 part."""
    if isinstance(f, PolarSamples):
        f = so2_decompose(f)
    return SO2FiniteFunction({0: f.mode(0)}, f.R, f.z0)


def disk_l2_norm(f: SO2FiniteFunction, n_nodes: int = 512) -> float:
    """||f||_2 in L^2(D, mu): sum_n pi int_0^R |f_n|^2 sinh(2r) dr."""
    nodes, weights = gauss_legendre(0.0, f.R, n_nodes)
    total = 0.0
    for profile in f.modes.values():
        total += float(np.sum(weights * np.abs(profile(nodes)) ** 2 * np.sinh(2 * nodes)))
    return math.sqrt(math.pi * total)


def radial_factor(lam: complex, k: int, r: float) -> complex:
    """(tanh r)^{|k|} 2F1((1+i lambda)/2, (1-i lambda)/2; 1+|k|; -sinh^2 r)."""
    n = abs(k)
    return math.tanh(r) ** n * jacobi_phi(JacobiParams.disk_mode(n), lam, r)


def _eigen_residual(F: Callable, lam: complex, r: float) -> float:
    """Largest relative (Delta + lambda^2 + 1) F residual at four points on the circle of radius r."""
    shift = complex(lam) ** 2 + 1
    worst = 0.0
    for theta in angle_grid(4):
        z = math.tanh(r) * complex(math.cos(theta), math.sin(theta))
        value = complex(np.asarray(F(z)).reshape(()))
        residual = laplacian_disk_apply(lambda p: complex(np.asarray(F(p)).reshape(())), z, EIGEN_CHECK_STEP)
        scale = max(abs(value) * (1 + abs(shift)), 1e-300)
        worst = max(worst, abs(residual + shift * value) / scale)
    return worst


def eigen_expansion_coeffs(F: Callable[[np.ndarray], np.ndarray], lam: complex, cutoff: int = 32,
                           reference_radius: float = 1.0, n_theta: int = 256,
                           check: bool = True) -> EigenExpansion:
    """a_k(lambda), |k| <= cutoff, of F = sum_k a_k (tanh r)^{|k|} 2F1(...; 1+|k|; -sinh^2 r) e^{ik theta}.

    Args:
        F: Vectorized function of z with Delta F = -(lambda^2 + 1) F.
        lam: Spectral parameter.
        cutoff: Largest |k| kept.
        reference_radius: Geodesic radius r* of the sampling circle.
        n_theta: Angular samples on the circle (must exceed 2 * cutoff).
        check: Verify the eigen-equation by finite differences first.

    Raises:
        DomainError: F is not an eigenfunction, or the circle is too coarse.
        IllConditioned: A radial factor at r* is below RADIAL_FACTOR_MIN.
    """
    lam = complex(lam)
    if n_theta <= 2 * cutoff:
        raise DomainError(f"{n_theta} angular samples cannot resolve modes up to {cutoff}")
    if check:
        residual = _eigen_residual(F, lam, 0.5)
        if residual > EIGEN_CHECK_TOL:
            raise DomainError(f"input is not an eigenfunction for lambda={lam}: residual {residual:.3g}")

    theta = angle_grid(n_theta)
    z = math.tanh(reference_radius) * np.exp(1j * theta)
    values = np.asarray(F(z), dtype=complex).reshape(-1)
    if not np.any(values):
        return EigenExpansion(lam, {k: 0j for k in range(-cutoff, cutoff + 1)}, reference_radius, cutoff)
    fourier = np.fft.fft(values) / n_theta

    coefficients = {}
    for k in range(-cutoff, cutoff + 1):
        factor = radial_factor(lam, k, reference_radius)
        if abs(factor) < RADIAL_FACTOR_MIN:
            raise IllConditioned(f"radial factor of mode {k} at r*={reference_radius} is {abs(factor):.3g}")
        coefficients[k] = complex(fourier[k % n_theta] / factor)
    return EigenExpansion(lam, coefficients, reference_radius, cutoff)


def reconstruct_expansion(expansion: EigenExpansion, z):
    """sum_k a_k (tanh r)^{|k|} 2F1(...; 1+|k|; -sinh^2 r) e^{ik theta} at z (scalar or array)."""
    zs = np.asarray(z, dtype=complex)
    flat = zs.reshape(-1)
    r, theta = np.arctanh(np.abs(flat)), np.angle(flat)
    total = np.zeros(flat.shape, dtype=complex)
    for k, a in expansion.coefficients.items():
        if a == 0:
            continue
        phi, _ = jacobi_table(JacobiParams.disk_mode(abs(k)), [expansion.lam], r)
        total += a * np.tanh(r) ** abs(k) * phi[0] * np.exp(1j * k * theta)
    return complex(total[0]) if zs.ndim == 0 else total.reshape(zs.shape)
