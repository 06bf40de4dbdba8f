"""Poisson kernel of NA and its complex powers."""
import cmath
import math
from typing import Optional, Tuple

import numpy as np

from src.errors import DomainError
from src.models.params import NAParams
from src.models.points import HTypeStructure, NAPoint
from src.na.group import default_structure


def _log_kernel(a: float, V: np.ndarray, Z: np.ndarray, Q: float) -> float:
    if not a > 0:
        raise DomainError(f"a must be positive, got {a}")
    V = np.asarray(V, dtype=float)
    Z = np.asarray(Z, dtype=float)
    base = (a + float(np.dot(V, V)) / 4) ** 2 + float(np.dot(Z, Z))
    return Q * (math.log(a) - math.log(base))


def poisson_kernel(a: float, V, Z, p: NAParams) -> float:
    """P_a(V, Z) = a^Q ((a + |V|^2/4)^2 + |Z|^2)^{-Q}."""
    return math.exp(_log_kernel(a, V, Z, p.Q))


def translate(x: NAPoint, nbar: Tuple[np.ndarray, np.ndarray], s: HTypeStructure) -> Tuple[np.ndarray, np.ndarray]:
    """N-part of nbar^{-1} n for x = n a: (V - V0, Z - Z0 - 1/2 [V0, V])."""
    V0 = np.asarray(nbar[0], dtype=float)
    Z0 = np.asarray(nbar[1], dtype=float)
    return x.V - V0, x.Z - Z0 - 0.5 * s.bracket_of(V0, x.V)


def poisson_power(
    x: NAPoint,
    nbar: Tuple[np.ndarray, np.ndarray],
    lam: complex,
    p: NAParams,
    s: Optional[HTypeStructure] = None,
) -> complex:
    """P(na, nbar)^{1/2 - i lambda / Q} with the positive real base."""
    s = s if s is not None else default_structure(x.m, x.k)
    V, Z = translate(x, nbar, s)
    exponent = 0.5 - 1j * complex(lam) / p.Q
    return cmath.exp(exponent * _log_kernel(x.a, V, Z, p.Q))
