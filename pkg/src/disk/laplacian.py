"""Laplace-Beltrami operator of the disk by finite differences, in Cartesian and geodesic polar form."""
import math
from typing import Callable

from src.disk.geometry import to_cartesian, to_polar
from src.errors import DomainError
from src.numerics.stencils import Geometry, laplacian_fd

# Below this geodesic radius the polar stencil hands over to the Cartesian one.
POLAR_CROSSOVER = 0.05


def laplacian_disk_cartesian(field: Callable[[complex], complex], z: complex, h: float) -> complex:
    """(1 - |z|^2)^2 (d_xx + d_yy) field."""
    z = complex(z)
    value = laplacian_fd(field, z, h, Geometry.EUCLIDEAN_2D, domain=lambda p: abs(p) < 1)
    return (1 - abs(z) ** 2) ** 2 * value


def laplacian_disk_polar(field: Callable[[complex], complex], r: float, theta: float, h: float) -> complex:
    """(d_r^2 + 2 coth(2r) d_r + 4 sinh(2r)^{-2} d_theta^2) field at z = tanh(r) e^{i theta}."""
    if not h > 0:
        raise DomainError(f"stencil step must be positive, got {h}")
    if r - h <= 0:
        raise DomainError(f"polar stencil of step {h} at r={r} crosses the origin")

    def at(rr: float, tt: float) -> complex:
        return complex(field(to_cartesian(rr, tt)))

    centre = at(r, theta)
    r_plus, r_minus = at(r + h, theta), at(r - h, theta)
    t_plus, t_minus = at(r, theta + h), at(r, theta - h)
    d_rr = (r_plus - 2 * centre + r_minus) / h**2
    d_r = (r_plus - r_minus) / (2 * h)
    d_tt = (t_plus - 2 * centre + t_minus) / h**2
    s = math.sinh(2 * r)
    return d_rr + 2 * math.cosh(2 * r) / s * d_r + 4 / s**2 * d_tt


def laplacian_disk_apply(field: Callable[[complex], complex], z: complex, h: float, form: str = "auto") -> complex:
    """Delta_D field at z.

    Args:
        form: ``cartesian``, ``polar`` or ``auto`` (polar unless r < POLAR_CROSSOVER).
    """
    if form not in ("auto", "cartesian", "polar"):
        raise DomainError(f"unknown Laplacian form {form!r}")
    r, theta = to_polar(z)
    if form == "cartesian" or (form == "auto" and r < POLAR_CROSSOVER):
        return laplacian_disk_cartesian(field, z, h)
    return laplacian_disk_polar(field, r, theta, h)
