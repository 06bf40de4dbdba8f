"""Group law, geodesic distance and geodesic inversion of a Damek-Ricci space NA.

Elements are written (V, Z, a) = n·a with n = exp(V + Z) in N and a > 0:

    (V, Z, a)(V', Z', a') = (V + a^{1/2} V', Z + a Z' + 1/2 a^{1/2} [V, V'], a a')
"""
import math
from typing import Optional

import numpy as np

from src.errors import DimensionMismatch, SingularPoint
from src.models.params import NAParams
from src.models.points import HTypeStructure, NAPoint, htype_heisenberg


def default_structure(m: int, k: int) -> HTypeStructure:
    """Heisenberg structure for k = 1; other shapes need an explicit bracket table."""
    if k != 1 or m % 2:
        raise DimensionMismatch(f"no built-in H-type structure for (m, k)=({m}, {k})")
    return htype_heisenberg(m // 2)


def _structure(x: NAPoint, s: Optional[HTypeStructure]) -> HTypeStructure:
    s = s if s is not None else default_structure(x.m, x.k)
    s.check_dimensions(x.m, x.k)
    return s


def group_mul(x: NAPoint, y: NAPoint, s: Optional[HTypeStructure] = None) -> NAPoint:
    s = _structure(x, s)
    s.check_dimensions(y.m, y.k)
    root = math.sqrt(x.a)
    V = x.V + root * y.V
    Z = x.Z + x.a * y.Z + 0.5 * root * s.bracket_of(x.V, y.V)
    return NAPoint(V, Z, x.a * y.a)


def group_inv(x: NAPoint, s: Optional[HTypeStructure] = None) -> NAPoint:
    """(-a^{-1/2} V, -a^{-1} Z, a^{-1}); the bracket term cancels by skew-symmetry."""
    return NAPoint(-x.V / math.sqrt(x.a), -x.Z / x.a, 1.0 / x.a)


def dilate(V: np.ndarray, Z: np.ndarray, a: float):
    """Conjugation n -> a^{-1} n a acting on (V, Z)."""
    return np.asarray(V) / math.sqrt(a), np.asarray(Z) / a


def geodesic_r(x: NAPoint) -> float:
    """r(V,Z,a) with r^2 = 1 - 4a / ((1 + a + |V|^2/4)^2 + |Z|^2), evaluated without cancellation."""
    v = float(np.dot(x.V, x.V)) / 4
    z2 = float(np.dot(x.Z, x.Z))
    numerator = (1 - x.a) ** 2 + 2 * v * (1 + x.a) + v * v + z2
    denominator = (1 + x.a + v) ** 2 + z2
    r = math.sqrt(numerator / denominator)
    assert r < 1, f"r(V, Z, a) must be < 1, got {r}"
    return r


def geodesic_rho(x: NAPoint, p: Optional[NAParams] = None) -> float:
    """Geodesic distance from the identity, rho = log((1+r)/(1-r))."""
    return 2.0 * math.atanh(geodesic_r(x))


def na_distance(x: NAPoint, y: NAPoint, s: Optional[HTypeStructure] = None,
                p: Optional[NAParams] = None) -> float:
    """d(x, y) = rho(x^{-1} y)."""
    return geodesic_rho(group_mul(group_inv(x, s), y, s), p)


def geodesic_inversion(x: NAPoint, s: Optional[HTypeStructure] = None) -> NAPoint:
    """sigma(V, Z, t) = ((-(t + |V|^2/4) + J_Z) V / D, -Z / D, t / D),
    D = (t + |V|^2/4)^2 + |Z|^2.
    """
    s = _structure(x, s)
    shifted = x.a + float(np.dot(x.V, x.V)) / 4
    D = shifted**2 + float(np.dot(x.Z, x.Z))
    if D == 0:
        raise SingularPoint(f"geodesic inversion is singular at {x.as_array()}")
    V = (-shifted * x.V + s.apply_J(x.Z, x.V)) / D
    return NAPoint(V, -x.Z / D, x.a / D)


def left_haar_weight(x: NAPoint, p: NAParams) -> float:
    """Density a^{-Q-1} of the left Haar measure in (V, Z, a) coordinates."""
    return x.a ** (-p.Q - 1)


def modular_function(x: NAPoint, p: NAParams) -> float:
    return x.a ** (-p.Q)


def left_translation_jacobian(x: NAPoint, p: NAParams) -> float:
    """Jacobian determinant a_x^{Q+1} of y -> x y."""
    return x.a ** (p.Q + 1)


def random_points(rng: np.random.Generator, m: int, k: int, count: int, spread: float = 1.0):
    """Sample points with Gaussian (V, Z) and log-normal a."""
    return [
        NAPoint(rng.normal(0, spread, m), rng.normal(0, spread, k), math.exp(rng.normal(0, spread)))
        for _ in range(count)
    ]
