"""Geometry of the unit disk with metric |dz|^2 / (1 - |z|^2)^2, so that d(0, tanh(r) e^{i theta}) = r."""
import cmath
import math
from typing import Tuple, Union

import numpy as np

from src.errors import DomainError
from src.models.points import BoundaryPoint, DiskPoint

Complexish = Union[complex, DiskPoint, np.ndarray]
Boundaryish = Union[complex, BoundaryPoint, np.ndarray]


def _z(z: Complexish):
    if isinstance(z, DiskPoint):
        return z.z
    if isinstance(z, np.ndarray):
        z = z.astype(complex)
        if np.any(np.abs(z) >= 1):
            raise DomainError("points must lie in the open unit disk")
        return z
    z = complex(z)
    if not abs(z) < 1:
        raise DomainError(f"|z| must be < 1, got {abs(z)}")
    return z


def _w(w: Boundaryish):
    if isinstance(w, BoundaryPoint):
        return w.w
    return np.asarray(w, dtype=complex) if isinstance(w, np.ndarray) else complex(w)


def to_polar(z: Complexish) -> Tuple[float, float]:
    """(r, theta) with z = tanh(r) e^{i theta}, theta in [0, 2 pi)."""
    point = z if isinstance(z, DiskPoint) else DiskPoint(_z(z))
    return point.r, point.theta


def to_cartesian(r: float, theta: float) -> complex:
    if r < 0:
        raise DomainError(f"geodesic radius must be >= 0, got {r}")
    return math.tanh(r) * cmath.exp(1j * theta)


def disk_distance(z1: Complexish, z2: Complexish):
    """Hyperbolic distance, from cosh(2d) = 1 + 2 |z1 - z2|^2 / ((1-|z1|^2)(1-|z2|^2))."""
    a, b = _z(z1), _z(z2)
    delta = np.abs(a - b) ** 2 / ((1 - np.abs(a) ** 2) * (1 - np.abs(b) ** 2))
    y = 2 * delta
    d = 0.5 * np.log1p(y + np.sqrt(y * (y + 2)))
    return float(d) if np.ndim(d) == 0 else d


def horocycle_bracket(z: Complexish, w: Boundaryish):
    """<z, w> = 1/2 log((1 - |z|^2) / |1 - z conj(w)|^2)."""
    z, w = _z(z), _w(w)
    value = 0.5 * np.log1p(-np.abs(z) ** 2) - np.log(np.abs(1 - z * np.conj(w)))
    return float(value) if np.ndim(value) == 0 else value


def poisson_power_disk(z: Complexish, w: Boundaryish, lam: complex):
    """e^{(i lambda + 1) <z, w>}, eigenfunction of the Laplacian with eigenvalue -(lambda^2 + 1)."""
    value = np.exp((1j * complex(lam) + 1) * np.asarray(horocycle_bracket(z, w)))
    return complex(value) if np.ndim(value) == 0 else value


def measure_weight_cartesian(z: Complexish):
    """(1 - |z|^2)^{-2} with respect to dx dy."""
    z = _z(z)
    value = (1 - np.abs(z) ** 2) ** -2
    return float(value) if np.ndim(value) == 0 else value


def measure_weight_polar(r):
    """1/2 sinh(2r) with respect to dr dtheta."""
    value = 0.5 * np.sinh(2 * np.asarray(r, dtype=float))
    return float(value) if np.ndim(value) == 0 else value


def mobius_to_origin(z0: complex, z: Complexish):
    """Disk isometry z -> (z - z0) / (1 - conj(z0) z), sending z0 to 0."""
    z0, z = _z(z0), _z(z)
    return (z - z0) / (1 - np.conj(z0) * z)


def mobius_from_origin(z0: complex, u: Complexish):
    """Inverse isometry u -> (u + z0) / (1 + conj(z0) u)."""
    z0, u = _z(z0), _z(u)
    return (u + z0) / (1 + np.conj(z0) * u)


def rotate(z: Complexish, phi: float):
    return cmath.exp(1j * phi) * _z(z)
