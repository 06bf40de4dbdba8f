"""One-dimensional quadrature: adaptive radial integrals, circle means and line trapezoids."""
import logging
import math
from functools import lru_cache
from typing import Callable, Optional, Tuple

import numpy as np
from scipy.integrate import quad

from src.errors import DomainError, ToleranceNotMet
from src.models.grids import QuadratureMethod, QuadratureSpec

logger = logging.getLogger(__name__)

_TRAPEZOID_MAX_LEVEL = 16


def _scalar(f: Callable, x: float) -> complex:
    return complex(np.asarray(f(x)).reshape(()))


def _quad_part(g: Callable[[float], float], lo: float, hi: float, spec: QuadratureSpec) -> Tuple[float, float]:
    result = quad(g, lo, hi, epsabs=spec.abs_tol, epsrel=spec.rel_tol,
                  limit=spec.max_subdivisions, full_output=1)
    if len(result) == 4:
        raise ToleranceNotMet(
            f"adaptive quadrature on [{lo}, {hi}] did not converge: {result[3]}",
            estimate=result[0], error=result[1],
        )
    return result[0], result[1]


def _periodic_trapezoid(f: Callable, lo: float, hi: float, spec: QuadratureSpec) -> complex:
    """Trapezoid rule with step halving until two levels agree."""
    width = hi - lo
    n = 8
    previous = None
    for _ in range(_TRAPEZOID_MAX_LEVEL):
        x = lo + width * np.arange(n) / n
        value = complex(width * np.mean([_scalar(f, xi) for xi in x]))
        if previous is not None:
            gap = abs(value - previous)
            if gap <= max(spec.abs_tol, spec.rel_tol * abs(value)):
                return value
        previous = value
        n *= 2
    raise ToleranceNotMet(f"trapezoid rule on [{lo}, {hi}] did not converge", estimate=previous)


def integrate_radial(
    f: Callable[[float], complex],
    lo: float,
    hi: float,
    spec: Optional[QuadratureSpec] = None,
) -> complex:
    """Integral of a complex function over [lo, hi].

    Args:
        f: Integrand, called with one float.
        lo: Lower limit.
        hi: Upper limit, hi >= lo.
        spec: Method and tolerances (adaptive Gauss-Kronrod by default).

    Returns:
        Complex integral estimate.
    """
    spec = spec or QuadratureSpec()
    if hi < lo:
        raise DomainError(f"integration limits reversed: [{lo}, {hi}]")
    if hi == lo:
        return 0j
    if spec.method is QuadratureMethod.PERIODIC_TRAPEZOID:
        return _periodic_trapezoid(f, lo, hi, spec)

    memo = {}

    def value(x: float) -> complex:
        if x not in memo:
            memo[x] = _scalar(f, x)
        return memo[x]

    re, _ = _quad_part(lambda x: value(x).real, lo, hi, spec)
    im, _ = _quad_part(lambda x: value(x).imag, lo, hi, spec)
    return complex(re, im)


def integrate_circle(f: Callable[[np.ndarray], np.ndarray], n_points: int) -> complex:
    """Normalized circle mean (1/2pi) int_0^{2pi} f(theta) dtheta by the periodic trapezoid rule."""
    if n_points < 8:
        raise DomainError(f"circle rule needs >= 8 points, got {n_points}")
    theta = 2 * math.pi * np.arange(n_points) / n_points
    values = np.asarray(f(theta))
    if values.shape != theta.shape:
        values = np.array([_scalar(f, t) for t in theta])
    return complex(np.mean(values))


@lru_cache(maxsize=64)
def _leggauss(n: int) -> Tuple[np.ndarray, np.ndarray]:
    nodes, weights = np.polynomial.legendre.leggauss(n)
    nodes.setflags(write=False)
    weights.setflags(write=False)
    return nodes, weights


def gauss_legendre(lo: float, hi: float, n: int) -> Tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights on [lo, hi]."""
    if n < 1:
        raise DomainError(f"need at least one node, got {n}")
    x, w = _leggauss(int(n))
    half = 0.5 * (hi - lo)
    return lo + half * (x + 1.0), half * w


def trapezoid_line(values: np.ndarray, step: float, half_line: bool = False, axis: int = 0):
    """Trapezoid rule on uniform samples.

    With ``half_line`` the samples are f(0), f(h), ..., f(L) of an even function
    and the result is the integral over [-L, L].
    """
    values = np.asarray(values)
    if values.shape[axis] < 2:
        raise DomainError("trapezoid rule needs at least two samples")
    first = np.take(values, 0, axis=axis)
    last = np.take(values, -1, axis=axis)
    total = step * (np.sum(values, axis=axis) - 0.5 * (first + last))
    return 2 * total if half_line else total


def tail_fraction(values: np.ndarray, step: float, fraction: float = 0.1, axis: int = 0) -> np.ndarray:
    """Integral of |values| over the last ``fraction`` of the nodes, an estimate of the truncated tail."""
    values = np.abs(np.asarray(values))
    count = max(2, int(math.ceil(fraction * values.shape[axis])))
    tail = np.take(values, range(values.shape[axis] - count, values.shape[axis]), axis=axis)
    return step * np.sum(tail, axis=axis)
