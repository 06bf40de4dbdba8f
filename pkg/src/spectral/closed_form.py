"""Closed meromorphic form of the disk spectral projection, its poles and residues.

For f = f_n(r) e^{in theta},

    P_lambda f(z) = gamma(lambda, n) (tanh r)^{|n|} phi_lambda(r) e^{in theta} * 2 pi I_n(lambda),
    I_n(lambda)   = int_0^R f_n(s) phi_lambda(s) (tanh s)^{|n|} sinh(2s) ds,
    gamma(lambda, n) = lambda sinh(pi lambda/2) Gamma(|n| + s) Gamma(|n| + 1 - s) / (8 pi^2 (|n|!)^2),

with s = (1 + i lambda)/2 and phi_lambda the Jacobi function of parameters (|n|, -|n|).
I_n is entire and even, so the only poles are those of gamma: lambda_k = +-i(2k+1), k >= |n|.
"""
import cmath
import logging
import math
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

import numpy as np

from src.config import config
from src.disk.geometry import mobius_to_origin
from src.disk.laplacian import laplacian_disk_cartesian
from src.errors import DomainError, NotAPole, PoleError
from src.models.grids import ComplexGrid
from src.models.params import JacobiParams
from src.models.profiles import RadialProfile, SO2FiniteFunction
from src.models.reports import MeromorphicProfile, ResidueResult
from src.numerics.quadrature import gauss_legendre, trapezoid_line
from src.numerics.stencils import convergence_order
from src.services.cache_service import projection_cache
from src.specfun.gamma import gamma_complex, log_gamma_complex, rgamma_complex
from src.specfun.hypergeometric import series_table
from src.specfun.jacobi import canonical_lambda, jacobi_table

logger = logging.getLogger(__name__)

COEFFICIENT_NODES = 512
POLE_TOL = 1e-12
REGULAR_PART_STEPS = (0.04, 0.02, 0.01)
# nearest pole is 1 away from a shifted line, so the trapezoid error is ~exp(-2 pi / step)
CONTOUR_STEP = 0.1
RECTANGLE_HALF_WIDTH = 4.0
# Gauss-Legendre nodes on the horizontal and the vertical sides
RECTANGLE_NODES = (192, 64)


def pole(k: int, sign: int = 1) -> complex:
    """lambda_k = sign * i(2k+1)."""
    return complex(0, sign * (2 * k + 1))


def pole_index(lam: complex, n: int) -> Optional[int]:
    """k if lambda = +-i(2k+1) with k >= |n|, else None."""
    lam = complex(lam)
    if abs(lam.real) > POLE_TOL:
        return None
    y = abs(lam.imag)
    k = round((y - 1) / 2)
    if k < abs(n) or abs(y - (2 * k + 1)) > POLE_TOL:
        return None
    return int(k)


def poles_in_strip(n: int, im_max: float) -> List[complex]:
    """Poles of a mode-n projection with |Im lambda| <= im_max, lower half first."""
    ks = [k for k in range(abs(n), int(im_max) + 1) if 2 * k + 1 <= im_max]
    return [pole(k, -1) for k in reversed(ks)] + [pole(k) for k in ks]


def _sinh_scaled(x: complex, log_scale: complex) -> complex:
    """sinh(x) exp(log_scale) without overflow for large |Re x|."""
    if x.real >= 0:
        return cmath.exp(x + log_scale) * (1 - cmath.exp(-2 * x)) / 2
    return -cmath.exp(-x + log_scale) * (1 - cmath.exp(2 * x)) / 2


def gamma_factor(lam: complex, n: int) -> complex:
    """gamma(lambda, n); double zero at 0, simple zeros at +-2il, PoleError at +-i(2k+1), k >= |n|."""
    lam = complex(lam)
    n = abs(n)
    k = pole_index(lam, n)
    if k is not None:
        raise PoleError(f"gamma(lambda, {n}) has a pole at lambda={lam} (k={k})", point=lam)
    if lam == 0:
        return 0j
    s = (1 + 1j * lam) / 2
    log_scale = log_gamma_complex(n + s) + log_gamma_complex(n + 1 - s) - 2 * math.lgamma(n + 1)
    return lam / (8 * math.pi**2) * _sinh_scaled(math.pi * lam / 2, log_scale)


def _mode_frame(f: SO2FiniteFunction, zs: Sequence[complex]) -> Tuple[np.ndarray, np.ndarray]:
    u = mobius_to_origin(f.z0, np.asarray(zs, dtype=complex)) if f.z0 != 0 else np.asarray(zs, dtype=complex)
    return np.arctanh(np.abs(u)), np.angle(u)


def _coefficient_key(profile: RadialProfile, n: int, lam: complex) -> Tuple:
    return ("coefficient", profile.key, profile.support, abs(n), complex(lam))


def _coefficient_weights(profile: RadialProfile, n: int) -> Tuple[np.ndarray, np.ndarray]:
    nodes, weights = gauss_legendre(0.0, profile.support, COEFFICIENT_NODES)
    return nodes, weights * profile(nodes) * np.tanh(nodes) ** abs(n) * np.sinh(2 * nodes)


def coefficient_integrals(profile: RadialProfile, n: int, lambdas: Iterable[complex],
                          threads: Optional[int] = None) -> np.ndarray:
    """I_n(lambda) for every lambda, cached per (profile, |n|, lambda)."""
    lam = canonical_lambda(np.asarray(list(lambdas), dtype=complex).reshape(-1))
    if profile.is_zero or lam.size == 0:
        return np.zeros(lam.size, dtype=complex)

    cacheable = bool(profile.key)
    found: Dict[complex, complex] = {}
    if cacheable:
        cached = projection_cache.get_many(_coefficient_key(profile, n, x) for x in set(lam.tolist()))
        found = {key[-1]: value for key, value in cached.items()}
    missing = sorted({x for x in lam.tolist() if x not in found}, key=lambda x: (x.real, x.imag))
    if missing:
        nodes, weights = _coefficient_weights(profile, n)
        phi, _ = jacobi_table(JacobiParams.disk_mode(n), missing, nodes, threads=threads)
        computed = phi @ weights
        for x, value in zip(missing, computed):
            found[x] = complex(value)
            if cacheable:
                projection_cache.set(_coefficient_key(profile, n, x), complex(value))
        logger.debug(f"Coefficient integrals for mode {n}: {len(missing)} computed, {lam.size - len(missing)} cached")
    return np.array([found[x] for x in lam.tolist()], dtype=complex)


def closed_form_table(f: SO2FiniteFunction, lambdas: Iterable[complex], zs: Iterable[complex],
                      threads: Optional[int] = None) -> np.ndarray:
    """P_lambda f(z) on a lambda x z grid, summed over the modes of f."""
    lam = np.asarray(list(lambdas), dtype=complex).reshape(-1)
    zs = np.asarray([complex(z) for z in zs], dtype=complex)
    out = np.zeros((lam.size, zs.size), dtype=complex)
    if lam.size == 0 or zs.size == 0:
        return out
    r, theta = _mode_frame(f, zs)
    for n, profile in f.modes.items():
        if profile.is_zero:
            continue
        gam = np.array([gamma_factor(x, n) for x in lam])
        coeff = coefficient_integrals(profile, n, lam, threads=threads)
        phi, _ = jacobi_table(JacobiParams.disk_mode(n), lam, r, threads=threads)
        angular = np.tanh(r) ** abs(n) * np.exp(1j * n * theta)
        out += (2 * math.pi * gam * coeff)[:, None] * angular[None, :] * phi
    return out


def closed_form_projection(f: SO2FiniteFunction, lam: complex, z: complex) -> complex:
    """P_lambda f(z) from the closed form; PoleError on the pole set of any non-zero mode."""
    return complex(closed_form_table(f, [lam], [complex(getattr(z, "z", z))])[0, 0])


# Residues


def gamma_residue(n: int, k: int, sign: int = 1) -> complex:
    """Residue of gamma(lambda, n) at sign * i(2k+1), k >= |n|.

    At lambda_k one Gamma factor sits on its pole -j, j = k - |n|, with residue
    (-1)^j / j! in its own argument, whose lambda-derivative is +i/2 or -i/2.
    """
    n = abs(n)
    if k < n:
        return 0j
    lam_k = pole(k, sign)
    j = k - n
    singular = (-1) ** j / math.factorial(j) / (sign * 0.5j)
    regular = gamma_complex(n + k + 1)
    return lam_k * cmath.sinh(math.pi * lam_k / 2) * singular * regular / (8 * math.pi**2 * math.factorial(n) ** 2)


def _polynomial_phi(n: int, k: int, r: np.ndarray) -> np.ndarray:
    """Jacobi function of parameters (|n|, -|n|) at lambda_k: the polynomial 2F1(-k, k+1; |n|+1; -sinh^2 r)."""
    return series_table(-k, k + 1, abs(n) + 1, -np.sinh(np.asarray(r, dtype=float)) ** 2)


def _mode_residue(profile: RadialProfile, n: int, k: int, sign: int, r: np.ndarray, theta: np.ndarray) -> np.ndarray:
    nodes, weights = _coefficient_weights(profile, n)
    coeff = complex(np.sum(weights * _polynomial_phi(n, k, nodes)))
    angular = np.tanh(r) ** abs(n) * np.exp(1j * n * theta)
    return gamma_residue(n, k, sign) * angular * _polynomial_phi(n, k, r) * 2 * math.pi * coeff


def residue_at_pole(f: SO2FiniteFunction, k: int, z: complex, sign: int = 1,
                    strict: bool = False) -> ResidueResult:
    """Res_{lambda = sign i(2k+1)} P_lambda f(z), from the Gamma residue times the regular factors.

    Modes with |n| > k are regular at lambda_k. When no mode is singular the result
    has ``is_pole`` False and value 0, or NotAPole is raised with ``strict``.
    """
    if sign not in (1, -1):
        raise DomainError(f"sign must be +1 or -1, got {sign}")
    lam_k = pole(k, sign)
    singular = [(n, p) for n, p in f.modes.items() if abs(n) <= k]
    if not singular:
        if strict:
            raise NotAPole(f"lambda={lam_k} is regular for modes {f.mode_numbers}")
        return ResidueResult(value=0j, pole=lam_k, k=k, is_pole=False)
    r, theta = _mode_frame(f, [complex(getattr(z, "z", z))])
    value = 0j
    for n, profile in singular:
        if not profile.is_zero:
            value += complex(_mode_residue(profile, n, k, sign, r, theta)[0])
    return ResidueResult(value=value, pole=lam_k, k=k, is_pole=True)


def residue_limit(f: SO2FiniteFunction, k: int, z: complex, sign: int = 1,
                  eps: float = 1e-4, n_angles: int = 4) -> complex:
    """Mean of (lambda - lambda_k) P_lambda f(z) over lambda = lambda_k + eps e^{i phi_j}.

    Averaging over n_angles equispaced directions cancels the first n_angles - 1
    orders of the Laurent expansion.
    """
    lam_k = pole(k, sign)
    offsets = eps * np.exp(1j * (2 * math.pi * np.arange(n_angles) / n_angles + math.pi / n_angles))
    values = closed_form_table(f, lam_k + offsets, [complex(getattr(z, "z", z))])[:, 0]
    return complex(np.mean(offsets * values))


def contour_shift_check(f: SO2FiniteFunction, z: complex, k: int, lambda_max: Optional[float] = None,
                        step: float = CONTOUR_STEP, threads: Optional[int] = None) -> Dict[str, object]:
    """Both sides of f(z) = int_{R + i alpha} P_lambda f(z) d lambda + 2 pi i sum_{j <= k} Res_{i(2j+1)}.

    The line Im lambda = alpha = 2k + 2 runs between the poles i(2k+1) and i(2k+3),
    truncated to |Re lambda| <= lambda_max. ``gap`` is the defect relative to the
    largest of the three terms.
    """
    z = complex(getattr(z, "z", z))
    lambda_max = lambda_max or config.lambda_max
    alpha = 2 * k + 2
    half = int(round(lambda_max / step))
    xs = step * np.arange(-half, half + 1)
    values = closed_form_table(f, xs + 1j * alpha, [z], threads=threads)[:, 0]
    line = complex(trapezoid_line(values, step))
    residues = 2j * math.pi * sum((residue_at_pole(f, j, z, 1).value for j in range(k + 1)), 0j)
    value = complex(f(z))
    scale = max(abs(value), abs(line), abs(residues))
    gap = abs(value - line - residues) / scale if scale else 0.0
    logger.debug(f"Contour shift to Im lambda={alpha} at z={z}: gap {gap:.3g}")
    return {"alpha": float(alpha), "value": value, "line": line, "residues": residues, "gap": gap}


def residue_rectangle_check(f: SO2FiniteFunction, z: complex, k: int,
                            half_width: float = RECTANGLE_HALF_WIDTH,
                            threads: Optional[int] = None) -> Dict[str, object]:
    """Contour integral of P_lambda f(z) around [-X, X] x [0, 2k+2] against 2 pi i sum_{j <= k} Res_{i(2j+1)}.

    The rectangle is the truncated shift of the inversion line: its top side is
    Im lambda = 2k + 2 and its vertical sides close it at Re lambda = +-X, so no
    spectral tail enters. Sides use Gauss-Legendre rules.
    """
    z = complex(getattr(z, "z", z))
    alpha = 2.0 * k + 2.0
    x, wx = gauss_legendre(-half_width, half_width, RECTANGLE_NODES[0])
    y, wy = gauss_legendre(0.0, alpha, RECTANGLE_NODES[1])
    sides = np.concatenate([x, half_width + 1j * y, x + 1j * alpha, -half_width + 1j * y])
    values = closed_form_table(f, sides, [z], threads=threads)[:, 0]
    bottom, right, top, left = np.split(values, np.cumsum([x.size, y.size, x.size]))
    # counterclockwise: right along the real axis, up, back along the shifted line, down
    contour = complex(np.dot(wx, bottom) + 1j * np.dot(wy, right) - np.dot(wx, top) - 1j * np.dot(wy, left))
    residues = 2j * math.pi * sum((residue_at_pole(f, j, z, 1).value for j in range(k + 1)), 0j)
    scale = max(abs(contour), abs(residues))
    gap = abs(contour - residues) / scale if scale else 0.0
    logger.debug(f"Residue rectangle up to Im lambda={alpha} at z={z}: gap {gap:.3g}")
    return {"alpha": alpha, "contour": contour, "residues": residues, "gap": gap}


def residue_sum_check(f: SO2FiniteFunction, z: complex, K: int, half_width: float = RECTANGLE_HALF_WIDTH,
                      threads: Optional[int] = None) -> float:
    """Worst residue-theorem gap over the rectangles whose tops lie above i(2k+1), lowest mode <= k <= K.

    Shifting the inversion line past the poles up to i(2k+1) costs exactly
    2 pi i times the sum of their residues, so a wrong residue at any pole up to K
    shows up as a gap of order one. Symmetric sums over +-i(2k+1) cancel for any
    residues, since P_lambda f is even, and are not used.
    """
    if not f.modes or all(profile.is_zero for profile in f.modes.values()):
        return 0.0
    lowest = min(abs(n) for n in f.mode_numbers)
    gaps = [residue_rectangle_check(f, z, k, half_width, threads)["gap"] for k in range(min(lowest, K), K + 1)]
    return float(max(gaps))


# Regular part and entire quotient at a pole


def regular_part_at_pole(f: SO2FiniteFunction, k: int, z: complex, sign: int = 1,
                         radius: float = 0.5, n_points: int = 32) -> complex:
    """Constant Laurent coefficient of P_lambda f(z) at lambda_k, as a circle mean."""
    lam_k = pole(k, sign)
    circle = lam_k + radius * np.exp(1j * 2 * math.pi * np.arange(n_points) / n_points)
    return complex(np.mean(closed_form_table(f, circle, [complex(z)])[:, 0]))


def regular_part_annihilation(f: SO2FiniteFunction, k: int, z: complex, sign: int = 1,
                              steps: Sequence[float] = REGULAR_PART_STEPS) -> Dict[str, object]:
    """Residual of (Delta + lambda_k^2 + 1)^2 on the regular part R0 at lambda_k.

    With the residue A, (Delta + lambda_k^2 + 1) R0 = -2 lambda_k A, so the square
    annihilates R0. Returns the nested finite-difference residuals per step,
    their convergence order and the relative gap of the first-order relation.
    """
    lam_k = pole(k, sign)
    shift = lam_k**2 + 1
    z = complex(z)

    def part(p: complex) -> complex:
        return regular_part_at_pole(f, k, p, sign)

    def apply(field, h):
        return lambda p: laplacian_disk_cartesian(field, p, h) + shift * field(p)

    residuals = [abs(apply(apply(part, h), h)(z)) for h in steps]
    h = steps[-1]
    first = apply(part, h)(z)
    target = -2 * lam_k * residue_at_pole(f, k, z, sign).value
    scale = max(abs(target), abs(first))
    gap = abs(first - target) / scale if scale else 0.0
    return {
        "steps": list(steps),
        "residuals": residuals,
        "order": convergence_order(residuals, steps),
        "first_order_gap": gap,
    }


def entire_quotient_check(f: SO2FiniteFunction, z: complex, k: int, radius: float = 0.5,
                          n_points: int = 64, sign: int = 1) -> Dict[str, float]:
    """Cauchy integral of P_lambda f(z) / [Gamma(|n|+s) Gamma(|n|+1-s)] around lambda_k.

    ``quotient`` is |(1/2 pi i) contour integral| / (radius max|quotient|), zero for an
    analytic quotient; ``projection`` is the same for P_lambda f itself, which
    keeps the residue.
    """
    n, _ = f.single_mode
    lam_k = pole(k, sign)
    offsets = radius * np.exp(1j * 2 * math.pi * np.arange(n_points) / n_points)
    lams = lam_k + offsets
    values = closed_form_table(f, lams, [complex(z)])[:, 0]
    s = (1 + 1j * lams) / 2
    inverse = np.array([rgamma_complex(abs(n) + x) * rgamma_complex(abs(n) + 1 - x) for x in s])
    quotient = values * inverse

    def relative(samples: np.ndarray) -> float:
        peak = float(np.max(np.abs(samples)))
        return abs(complex(np.mean(samples * offsets))) / (radius * peak) if peak else 0.0

    return {"quotient": relative(quotient), "projection": relative(values)}


# Profiles and sweeps


def meromorphic_profile(f: SO2FiniteFunction, z: complex, K: int) -> MeromorphicProfile:
    """Pole and zero bookkeeping of lambda -> P_lambda f(z) for a single-mode f, residues up to K."""
    n, _ = f.single_mode
    z = complex(z)
    poles, residues = [], {}
    for k in range(abs(n), K + 1):
        for sign in (-1, 1):
            lam_k = pole(k, sign)
            poles.append(lam_k)
            residues[lam_k] = residue_at_pole(f, k, z, sign).value
    zeros = [0j] + [complex(0, sign * 2 * l) for l in range(1, K + 1) for sign in (-1, 1)]
    return MeromorphicProfile(
        mode=n,
        value=lambda lam: closed_form_projection(f, lam, z),
        poles=sorted(poles, key=lambda p: p.imag),
        zeros=sorted(zeros, key=lambda p: p.imag),
        residues=residues,
    )


def projection_sweep(f: SO2FiniteFunction, z: complex, grid: ComplexGrid,
                     radius: float = 0.2, threads: Optional[int] = None) -> List[Tuple]:
    """Rows (lambda_re, lambda_im, mode, value_re, value_im) in grid order, modes ascending.

    Grid points within ``radius`` of a pole of any mode are skipped.
    """
    lowest = min(abs(n) for n in f.mode_numbers)
    lams = grid.points(exclude=poles_in_strip(lowest, grid.im_bound), radius=radius)
    per_mode = {n: closed_form_table(f.restrict(n), lams, [complex(z)], threads=threads)[:, 0]
                for n in f.mode_numbers}
    rows = []
    for i, lam in enumerate(lams):
        for n in f.mode_numbers:
            value = per_mode[n][i]
            rows.append((lam.real, lam.imag, n, value.real, value.imag))
    return rows
