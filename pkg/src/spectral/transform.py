"""Fourier-Helgason transform, spectral projection and inversion on the disk.

    f^(lambda, w) = int_D e^{(-i lambda + 1) <z, w>} f(z) d mu(z)
    P_lambda f(z) = (1/4 pi) lambda tanh(pi lambda/2) int_{S^1} f^(lambda, w) e^{(i lambda + 1) <z, w>} d sigma(w)

Both integrals run over a product rule on the geodesic ball B_R(z0): Gauss-Legendre
in the local radius, uniform in the local angle. The boundary circle uses the
same number of uniform points, which turns the inner sum into a circular
convolution when the support is centred at the origin.
"""
import logging
import math
import warnings
from dataclasses import dataclass
from typing import Callable, Iterable, Optional, Tuple, Union

import numpy as np

from src.config import config
from src.disk.geometry import disk_distance, mobius_from_origin, poisson_power_disk
from src.errors import DomainError, TruncationWarning
from src.models.grids import lambda_grid
from src.models.points import BoundaryPoint, DiskPoint
from src.models.profiles import SO2FiniteFunction, angle_grid
from src.numerics.quadrature import gauss_legendre, tail_fraction, trapezoid_line
from src.spectral.closed_form import COEFFICIENT_NODES, closed_form_table
from src.spectral.spherical import density_factor, generalized_spherical_table, phi_disk_table

logger = logging.getLogger(__name__)

TAIL_TOLERANCE = 1e-3

PointLike = Union[complex, DiskPoint]


def _point(z: PointLike) -> complex:
    z = z.z if isinstance(z, DiskPoint) else complex(z)
    if not abs(z) < 1:
        raise DomainError(f"|z| must be < 1, got {abs(z)}")
    return z


def _boundary(w: Union[complex, BoundaryPoint]) -> complex:
    return w.w if isinstance(w, BoundaryPoint) else complex(w)


@dataclass(frozen=True, eq=False)
class PolarRule:
    """Product rule on a geodesic ball: ``sum_i weights[i] * mean_l F[i, l]`` approximates int F d mu."""

    R: float
    r: np.ndarray
    theta: np.ndarray
    weights: np.ndarray

    @classmethod
    def build(cls, R: float, n_r: Optional[int] = None, n_theta: Optional[int] = None) -> "PolarRule":
        if not R > 0:
            raise DomainError(f"support radius must be positive, got {R}")
        n_theta = n_theta or config.circle_nodes
        if n_theta < 8:
            raise DomainError(f"angular rule needs >= 8 points, got {n_theta}")
        r, w = gauss_legendre(0.0, R, n_r or config.radial_nodes)
        # d mu = pi sinh(2r) dr d sigma
        return cls(R, r, angle_grid(n_theta), w * math.pi * np.sinh(2 * r))

    @property
    def n_theta(self) -> int:
        return self.theta.size

    def local_points(self) -> np.ndarray:
        return np.tanh(self.r)[:, None] * np.exp(1j * self.theta)[None, :]

    def points(self, z0: complex) -> np.ndarray:
        """Nodes in the disk for a ball centred at z0, shape (n_r, n_theta)."""
        u = self.local_points()
        return u if z0 == 0 else mobius_from_origin(z0, u)

    def sample(self, f: SO2FiniteFunction) -> np.ndarray:
        return f.evaluate_polar(self.r[:, None], self.theta[None, :])

    def integrate(self, values: np.ndarray) -> complex:
        return complex(np.sum(self.weights * np.mean(values, axis=-1)))


def _rule_for(f: SO2FiniteFunction, rule: Optional[PolarRule]) -> PolarRule:
    return rule if rule is not None else PolarRule.build(f.R)


def fh_forward_disk(f: SO2FiniteFunction, lam: complex, w: Union[complex, BoundaryPoint],
                    rule: Optional[PolarRule] = None) -> complex:
    """f^(lambda, w) by polar quadrature."""
    rule = _rule_for(f, rule)
    samples = rule.sample(f)
    if not np.any(samples):
        return 0j
    kernel = poisson_power_disk(rule.points(f.z0), _boundary(w), -complex(lam))
    return rule.integrate(samples * kernel)


def fh_boundary_grid(f: SO2FiniteFunction, lam: complex, rule: Optional[PolarRule] = None,
                     n_w: Optional[int] = None) -> Tuple[np.ndarray, np.ndarray]:
    """f^(lambda, w_j) at uniform boundary points w_j = e^{2 pi i j / n_w}.

    Returns:
        (w, values)
    """
    rule = _rule_for(f, rule)
    n_w = n_w or rule.n_theta
    w = np.exp(1j * angle_grid(n_w))
    samples = rule.sample(f)
    if not np.any(samples):
        return w, np.zeros(n_w, dtype=complex)
    lam = complex(lam)

    if f.z0 == 0 and n_w == rule.n_theta:
        # P_{-lambda}(tanh r e^{i theta_l}, w_j) = K_i[l - j]
        kernel = poisson_power_disk(rule.local_points(), 1.0, -lam)
        reversed_kernel = np.roll(kernel[:, ::-1], 1, axis=1)
        conv = np.fft.ifft(np.fft.fft(samples, axis=1) * np.fft.fft(reversed_kernel, axis=1), axis=1)
        return w, np.sum(rule.weights[:, None] * conv, axis=0) / rule.n_theta

    points = rule.points(f.z0)
    values = np.array([rule.integrate(samples * poisson_power_disk(points, wj, -lam)) for wj in w])
    return w, values


def fh_mode_coefficient(f: SO2FiniteFunction, lam: complex, n: int,
                        rule: Optional[PolarRule] = None) -> complex:
    """a_{lambda,n} with f^(lambda, w) = sum_n a_{lambda,n} w^n.

    For a support centred at the origin a_{lambda,n} = pi int_0^R f_n(r) Phi_{-lambda,n}(r) sinh(2r) dr;
    otherwise it is the discrete Fourier coefficient of the boundary samples.
    """
    if f.z0 != 0:
        w, values = fh_boundary_grid(f, lam, rule)
        return complex(np.mean(values * w ** (-n)))
    profile = f.mode(n)
    if profile.is_zero:
        return 0j
    nodes, weights = gauss_legendre(0.0, profile.support, COEFFICIENT_NODES)
    phi = generalized_spherical_table([-complex(lam)], n, nodes)[0]
    return complex(math.pi * np.sum(weights * profile(nodes) * phi * np.sinh(2 * nodes)))


def q_transform(f: SO2FiniteFunction, lam: complex, z: PointLike,
                rule: Optional[PolarRule] = None) -> complex:
    """Q_lambda f(z) = int_{S^1} f^(lambda, w) P_lambda(z, w) d sigma(w); entire in lambda."""
    z = _point(z)
    w, values = fh_boundary_grid(f, lam, rule)
    if not np.any(values):
        return 0j
    return complex(np.mean(values * poisson_power_disk(z, w, complex(lam))))


def spectral_projection_disk(f: SO2FiniteFunction, lam: complex, z: PointLike,
                             rule: Optional[PolarRule] = None) -> complex:
    """P_lambda f(z) through the double quadrature; PoleError at lambda = +-i(2k+1)."""
    lam = complex(lam)
    factor = density_factor(lam)
    if factor == 0:
        return 0j
    return factor / (2 * math.pi) * q_transform(f, lam, z, rule)


def projection_at_points(f: SO2FiniteFunction, lam: complex, zs: Iterable[PointLike],
                         rule: Optional[PolarRule] = None) -> np.ndarray:
    """spectral_projection_disk at several points sharing one boundary transform."""
    points = np.array([_point(z) for z in zs], dtype=complex)
    lam = complex(lam)
    factor = density_factor(lam)
    if factor == 0 or points.size == 0:
        return np.zeros(points.size, dtype=complex)
    w, values = fh_boundary_grid(f, lam, rule)
    kernel = poisson_power_disk(points[:, None], w[None, :], lam)
    return factor / (2 * math.pi) * np.mean(values[None, :] * kernel, axis=1)


def projection_by_convolution(f: SO2FiniteFunction, lam: complex, z: PointLike,
                              rule: Optional[PolarRule] = None) -> complex:
    """(f * phi_lambda)(z) = (1/2 pi) int_D phi_lambda(d(z, z')) f(z') d mu(z')."""
    z = _point(z)
    lam = complex(lam)
    factor = density_factor(lam)
    rule = _rule_for(f, rule)
    samples = rule.sample(f)
    if factor == 0 or not np.any(samples):
        return 0j
    distances = disk_distance(z, rule.points(f.z0))
    phi = phi_disk_table([lam], distances.ravel())[0].reshape(distances.shape)
    return factor / (2 * math.pi) * rule.integrate(samples * phi)


@dataclass
class ProjectionFamily:
    """lambda -> P_lambda f, the integrand of the inversion formula.

    ``method`` selects the closed form (``closed``, vectorized over lambda) or
    the double quadrature (``quadrature``).
    """

    f: SO2FiniteFunction
    method: str = "closed"
    threads: Optional[int] = None

    def __post_init__(self):
        if self.method not in ("closed", "quadrature"):
            raise DomainError(f"unknown projection method {self.method!r}")

    def __call__(self, lam: complex) -> Callable[[complex], complex]:
        return lambda z: self.evaluate(lam, z)

    def evaluate(self, lam: complex, z: PointLike) -> complex:
        if self.method == "quadrature":
            return spectral_projection_disk(self.f, lam, z)
        return complex(closed_form_table(self.f, [lam], [_point(z)], threads=self.threads)[0, 0])

    def evaluate_grid(self, lambdas: Iterable[complex], zs: Iterable[PointLike]) -> np.ndarray:
        """Values on a lambda x z grid."""
        zs = [_point(z) for z in zs]
        if self.method == "closed":
            return closed_form_table(self.f, lambdas, zs, threads=self.threads)
        return np.array([[spectral_projection_disk(self.f, lam, z) for z in zs] for lam in lambdas])


def inversion_disk(projector: Callable, z: Union[PointLike, Iterable[PointLike]],
                   lambda_max: Optional[float] = None, step: Optional[float] = None,
                   tolerance: float = TAIL_TOLERANCE):
    """f(z) = int_R P_lambda f(z) d lambda, truncated to [-Lambda, Lambda].

    Args:
        projector: lambda -> (z -> P_lambda f(z)); a ProjectionFamily is evaluated on the whole grid at once.
        z: One point or several.
        lambda_max: Truncation Lambda (config.lambda_max by default).
        step: Trapezoid step (config.lambda_step by default).
        tolerance: Largest admissible tail, relative to int |P_lambda f(z)| d lambda.

    Returns:
        complex for one point, array for several.
    """
    scalar = isinstance(z, (complex, float, int, DiskPoint))
    zs = [_point(z)] if scalar else [_point(p) for p in z]
    lambda_max = lambda_max or config.lambda_max
    step = step or config.lambda_step
    lams = lambda_grid(lambda_max, step)

    if hasattr(projector, "evaluate_grid"):
        table = np.asarray(projector.evaluate_grid(lams, zs), dtype=complex)
    else:
        table = np.array([[complex(projector(lam)(p)) for p in zs] for lam in lams])

    values = trapezoid_line(table, step, half_line=True, axis=0)
    mass = trapezoid_line(np.abs(table), step, half_line=True, axis=0)
    tail = 2 * tail_fraction(table, step, axis=0)
    worst = float(np.max(np.where(mass > 0, tail / np.where(mass > 0, mass, 1.0), 0.0)))
    if worst > tolerance:
        logger.warning(f"Inversion truncated at Lambda={lambda_max}: relative tail {worst:.3g}")
        warnings.warn(f"inversion tail {worst:.3g} exceeds {tolerance} at Lambda={lambda_max}", TruncationWarning)
    logger.debug(f"Inversion over {lams.size} lambdas at {len(zs)} points, relative tail {worst:.3g}")
    return complex(values[0]) if scalar else values
