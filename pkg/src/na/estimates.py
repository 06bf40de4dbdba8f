"""Plancherel identity, L^2 projection bounds, Koornwinder and Paley-Wiener certificates on NA."""
import cmath
import logging
import math
import warnings
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from src.config import config
from src.errors import DimensionMismatch, DomainError, TruncationWarning
from src.models.grids import ComplexGrid, EnvelopeFit, lambda_grid
from src.models.params import JacobiParams, NAParams
from src.models.points import NAPoint
from src.models.profiles import RadialProfile
from src.numerics.envelope import envelope_fit
from src.numerics.quadrature import integrate_radial, tail_fraction, trapezoid_line
from src.numerics.stencils import Geometry, convergence_order, laplacian_fd
from src.na.group import default_structure, geodesic_inversion, geodesic_rho, group_inv, group_mul
from src.na.spherical import (
    RadialQuadrature,
    density_singular_set,
    eigenvalue,
    plancherel_density,
    projection_table,
    radial_density,
    radial_drift,
    spherical_phi_na,
    spherical_phi_table,
)
from src.specfun.cfunction import plancherel_weight
from src.specfun.gamma import gamma_complex
from src.specfun.hypergeometric import hyp2f1
from src.specfun.jacobi import jacobi_table

logger = logging.getLogger(__name__)

TAIL_TOLERANCE = 1e-3
EIGEN_STEPS = (1e-2, 5e-3, 2.5e-3)


def _spectral_line(f: RadialProfile, p: NAParams, lambda_max: Optional[float], step: Optional[float],
                   threads: Optional[int] = None):
    """lambda grid on [0, Lambda], f~ on it and the weight |c_{alpha,beta}(2 lambda)|^{-2}."""
    lam = lambda_grid(lambda_max or config.lambda_max, step or config.lambda_step)
    quad = RadialQuadrature(p, f.support)
    ft = quad.transform(f, lam, threads=threads)
    weight = np.array([plancherel_weight(p.jacobi, 2 * x).real for x in lam])
    return lam, quad, ft, weight


def _line_integral(integrand: np.ndarray, lam: np.ndarray, label: str) -> float:
    h = lam[1] - lam[0]
    total = float(trapezoid_line(integrand, h))
    tail = float(tail_fraction(integrand, h))
    if total > 0 and tail > TAIL_TOLERANCE * total:
        logger.warning(f"{label}: truncated tail {tail:.3g} exceeds {TAIL_TOLERANCE} of {total:.3g}")
        warnings.warn(f"{label}: truncation at lambda={lam[-1]} leaves tail {tail:.3g}", TruncationWarning)
    return total


def plancherel_check(f: RadialProfile, p: NAParams, lambda_max: Optional[float] = None,
                     step: Optional[float] = None, threads: Optional[int] = None) -> Tuple[float, float]:
    """Both sides of ||f||^2 = (c_{m,k}/2 pi) int_0^inf |f~(lambda)|^2 |c(lambda)|^{-2} d lambda.

    Returns:
        (lhs, rhs) = (||f||^2, truncated spectral integral)
    """
    if f.is_zero:
        return 0.0, 0.0
    lam, quad, ft, weight = _spectral_line(f, p, lambda_max, step, threads)
    lhs = quad.norm_squared(f)
    rhs = _line_integral(np.abs(ft) ** 2 * weight, lam, "plancherel") / (2 * math.pi)
    logger.debug(f"Plancherel (m,k)=({p.m},{p.k}): lhs={lhs:.12g} rhs={rhs:.12g}")
    return lhs, rhs


def _projection_energy(f: RadialProfile, rhos: Sequence[float], p: NAParams,
                       lambda_max: Optional[float], step: Optional[float], threads: Optional[int]):
    """int_0^Lambda |P_lambda f(rho)|^2 |c(lambda)|^2 d lambda for each rho, and ||f||^2."""
    lam, quad, ft, weight = _spectral_line(f, p, lambda_max, step, threads)
    phi = spherical_phi_table(p, lam, rhos, threads=threads)
    integrand = (p.c_mk / (16 * math.pi**2)) * weight[:, None] * np.abs(ft[:, None] * phi) ** 2
    energy = [_line_integral(integrand[:, i], lam, "l2-bound") for i in range(len(rhos))]
    return np.array(energy), quad.norm_squared(f)


def l2_projection_bound_check(f: RadialProfile, rho: float, p: NAParams,
                              lambda_max: Optional[float] = None, step: Optional[float] = None,
                              threads: Optional[int] = None) -> Tuple[float, float]:
    """int_0^inf |P_lambda f(x)|^2 |c(lambda)|^2 d lambda <= (c_{m,k}/8 pi) ||f||^2 at d(x, e) = rho."""
    if rho < 0:
        raise DomainError(f"rho must be >= 0, got {rho}")
    if f.is_zero:
        return 0.0, 0.0
    energy, norm = _projection_energy(f, [rho], p, lambda_max, step, threads)
    return float(energy[0]), p.c_mk / (8 * math.pi) * norm


def compact_set_constant(p: NAParams) -> float:
    """2^m pi^{(m+k)/2} / Gamma((m+k)/2) * c_{m,k} / 4 pi."""
    half = (p.m + p.k) / 2
    return 2.0**p.m * math.pi**half / math.gamma(half) * p.c_mk / (4 * math.pi)


def compact_set_bound_check(f: RadialProfile, rhos: Iterable[float], p: NAParams,
                            lambda_max: Optional[float] = None, step: Optional[float] = None,
                            threads: Optional[int] = None) -> Dict[str, object]:
    """Smallest c(K) with int_R |c(lambda)|^2 |P_lambda f(x)|^2 d lambda <= kappa c(K) ||f||^2
    over the points x at the sampled distances from e."""
    rhos = [float(r) for r in rhos]
    if not rhos or min(rhos) < 0:
        raise DomainError("need a non-empty set of distances >= 0")
    kappa = compact_set_constant(p)
    if f.is_zero:
        return {"rhos": rhos, "lhs": [0.0] * len(rhos), "kappa": kappa, "norm_squared": 0.0, "c_K": 0.0}
    energy, norm = _projection_energy(f, rhos, p, lambda_max, step, threads)
    lhs = 2 * energy
    return {
        "rhos": rhos,
        "lhs": lhs.tolist(),
        "kappa": kappa,
        "norm_squared": norm,
        "c_K": float(np.max(lhs) / (kappa * norm)),
    }


def koornwinder_bound_check(p: JacobiParams, n: int, grid: ComplexGrid, t_max: float,
                            t_step: float = 0.05, threads: Optional[int] = None) -> EnvelopeFit:
    """Certificate C with |Gamma(alpha+1)^{-1} d^n/dt^n phi_lambda(t)| <= C (1+|lambda|)^n (1+t) e^{(|Im lambda|-rho0) t}
    over the grid and t in [0, t_max]."""
    if n not in (0, 1):
        raise DomainError(f"derivative order must be 0 or 1, got {n}")
    if not p.alpha > -0.5:
        raise DomainError(f"alpha must exceed -1/2, got {p.alpha}")
    lams = grid.points()
    ts = np.linspace(0.0, t_max, int(round(t_max / t_step)) + 1)
    values, derivs = jacobi_table(p, lams, ts, threads=threads)
    table = values if n == 0 else derivs
    magnitude = np.abs(table) / abs(gamma_complex(p.alpha + 1))
    growth = (np.abs(lams.imag)[:, None] - p.rho0) * ts[None, :]
    envelope = (1 + np.abs(lams))[:, None] ** n * (1 + ts)[None, :] * np.exp(growth)
    ratio = magnitude / envelope
    C = float(np.max(ratio))
    logger.debug(f"Koornwinder n={n}, t_max={t_max}: C={C:.6g}")
    return EnvelopeFit(model_order=n, fitted_constant=C, max_violation=0.0, n_points=ratio.size)


def pw_envelope_radial(f: RadialProfile, p: NAParams, grid: ComplexGrid, N0: int,
                       rho: float = 0.0, a: Optional[float] = None,
                       threads: Optional[int] = None) -> EnvelopeFit:
    """Certificate C_{N0} with |P_lambda f(x)| <= C |c(lambda)|^{-2} (1+|lambda|^2)^{-N0} e^{|Im lambda|(d(x,e)+a)}.

    The density factor is divided out, so the fitted values are |f~(lambda) Phi_lambda(rho)|
    times the constant c_{m,k}/4 pi.
    """
    a = f.support if a is None else a
    lams = grid.points(exclude=density_singular_set(p, grid.im_bound))
    if f.is_zero:
        return envelope_fit((lams, np.zeros(lams.size)), N0, a, rho)
    ft = RadialQuadrature(p, f.support).transform(f, lams, threads=threads)
    phi = spherical_phi_table(p, lams, [rho], threads=threads)[:, 0]
    magnitude = p.c_mk / (4 * math.pi) * np.abs(ft * phi)
    return envelope_fit((lams, magnitude), N0, a, rho)


def radial_laplacian(f: RadialProfile, p: NAParams, h: float = 1e-4) -> RadialProfile:
    """L_r f = f'' + drift f' by central differences on the even extension of f."""

    def apply(x: np.ndarray) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        plus, centre, minus = f(x + h), f(x), f(np.abs(x - h))
        drift = p.m / 2 / np.tanh(x / 2) + p.k / np.tanh(x)
        return (plus - 2 * centre + minus) / h**2 + drift * (plus - minus) / (2 * h)

    return RadialProfile(support=f.support, func=apply, key=("radial-laplacian", f.key, h))


def intertwining_check(f: RadialProfile, lam: complex, p: NAParams, rho: float = 0.0,
                       h: float = 1e-4) -> Dict[str, float]:
    """P_lambda(L f)(x) against -(lambda^2 + Q^2/4) P_lambda f(x).

    ``relative_gap_alt`` uses the eigenvalue -(lambda^2 + 4 Q^2) for comparison.
    """
    quad = RadialQuadrature(p, f.support)
    Lf = radial_laplacian(f, p, h)
    density = plancherel_density(p, lam)
    phi = spherical_phi_na(p, lam, rho)
    lhs = density * complex(quad.transform(Lf, [lam])[0]) * phi
    base = density * complex(quad.transform(f, [lam])[0]) * phi
    rhs = eigenvalue(p, lam) * base
    alt = -(complex(lam) ** 2 + 4 * p.Q**2) * base
    scale = abs(rhs) if rhs != 0 else 1.0
    return {
        "lhs": lhs,
        "rhs": rhs,
        "relative_gap": abs(lhs - rhs) / scale,
        "relative_gap_alt": abs(lhs - alt) / scale,
    }


def eigen_residual_order(p: NAParams, lam: complex, rho: float = 1.0,
                         steps: Sequence[float] = EIGEN_STEPS) -> Tuple[float, list]:
    """Observed order of the radial finite-difference residual (L + lambda^2 + Q^2/4) Phi_lambda."""
    def field(x: float) -> complex:
        return spherical_phi_na(p, lam, x)

    target = eigenvalue(p, lam) * field(rho)
    residuals = [
        abs(laplacian_fd(field, rho, h, Geometry.RADIAL_1D, drift=lambda x: radial_drift(p, x)) - target)
        for h in steps
    ]
    return convergence_order(residuals, steps), residuals


def phi_pfaff(p: NAParams, lam: complex, rho: float) -> complex:
    """Phi_lambda(rho) from the Pfaff form (cosh t)^{-2a} 2F1(a, c-b; c; tanh^2 t), t = rho/2.

    Not symmetric in lambda, so evaluations at lambda and -lambda take different paths.
    """
    if rho < 0:
        raise DomainError(f"rho must be >= 0, got {rho}")
    q = p.jacobi
    w = 2j * complex(lam)
    a = (q.rho0 + w) / 2
    t = rho / 2
    tail = hyp2f1(a, (q.alpha - q.beta + 1 + w) / 2, q.alpha + 1, math.tanh(t) ** 2, rtol=config.ode_rtol)
    return cmath.exp(-2 * a * math.log(math.cosh(t))) * tail


def radial_orbit(x: NAPoint, p: NAParams, shift: Optional[NAPoint] = None) -> List[NAPoint]:
    """Points at the same distance from e as x, reached through different group operations.

    The list holds x^{-1}, the reflections (-V, Z, a) and (V, -Z, a), sigma(x) when an
    H-type structure is available, and g^{-1}(g x) for a left translation g.
    """
    orbit = [group_inv(x), NAPoint(-x.V, x.Z, x.a), NAPoint(x.V, -x.Z, x.a)]
    try:
        s = default_structure(p.m, p.k)
    except DimensionMismatch:
        logger.debug(f"no H-type structure for (m,k)=({p.m},{p.k}), skipping sigma and translations")
        return orbit
    orbit.append(geodesic_inversion(x, s))
    g = shift or NAPoint(np.full(p.m, -0.7), np.full(p.k, 0.4), 0.6)
    orbit.append(group_mul(group_inv(g, s), group_mul(g, x, s), s))
    return orbit


def projection_conditions_na(f: RadialProfile, p: NAParams, grid: Optional[ComplexGrid] = None,
                             rho: float = 0.0, samples: Sequence[float] = (0.5, 1.5, 3.0),
                             point: Optional[NAPoint] = None,
                             threads: Optional[int] = None) -> Dict[str, float]:
    """Numerical evaluation of the Paley-Wiener conditions on lambda -> P_lambda f.

    Metrics:
        radiality: spread of P_lambda f over ``radial_orbit(point)``, each distance
            recomputed from the group coordinates.
        evenness: gap between f~(+-lambda) Phi_{+-lambda}(rho), both integrated with the
            Pfaff form of Phi so that -lambda is never folded back to lambda.
        eigen_order: observed order of the radial eigen-residual.
        divisibility: P_lambda f(e) from ``projection_table`` divided by the density,
            against f~ from an adaptive integral.
        envelope_C1..C4: Paley-Wiener envelope certificates.
    """
    grid = grid or ComplexGrid.default()
    lams = np.asarray(samples, dtype=float)
    metrics: Dict[str, float] = {}

    x = point or NAPoint(np.full(p.m, 0.5), np.full(p.k, 0.3), math.exp(0.4))
    rhos = [geodesic_rho(y) for y in [x] + radial_orbit(x, p)]
    table = projection_table(f, lams, rhos, p, threads=threads)
    scale = float(np.max(np.abs(table))) or 1.0
    metrics["radiality"] = float(np.max(np.abs(table - table[:, :1]))) / scale

    def pfaff_projection(lam: float) -> complex:
        def integrand(r: float) -> complex:
            return complex(f(r)) * phi_pfaff(p, lam, r) * radial_density(p, r)

        return integrate_radial(integrand, 0.0, f.support) * phi_pfaff(p, lam, rho)

    plus = np.array([pfaff_projection(lam) for lam in lams])
    minus = np.array([pfaff_projection(-lam) for lam in lams])
    scale = float(np.max(np.abs(plus))) or 1.0
    metrics["evenness"] = float(np.max(np.abs(plus - minus))) / scale
    metrics["eigen_order"], _ = eigen_residual_order(p, 1.5, max(rho, 1.0))

    at_identity = projection_table(f, lams, [0.0], p, threads=threads)[:, 0]
    gaps = []
    for lam, value in zip(lams, at_identity):
        quotient = value / plancherel_density(p, lam)

        def integrand(r: float, lam=lam) -> complex:
            return complex(f(r)) * spherical_phi_na(p, lam, r) * radial_density(p, r)

        reference = integrate_radial(integrand, 0.0, f.support)
        gaps.append(abs(quotient - reference) / max(abs(reference), 1e-300))
    metrics["divisibility"] = float(max(gaps))
    for N0 in range(1, 5):
        fit = pw_envelope_radial(f, p, grid, N0, rho=rho, threads=threads)
        metrics[f"envelope_C{N0}"] = fit.fitted_constant
    return metrics
