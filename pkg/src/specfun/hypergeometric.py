"""Gauss hypergeometric function 2F1(a, b; c; x) for complex parameters and real x < 1.

Evaluation order:

* terminating series when a or b is a non-positive integer;
* power series for |x| <= 1/2;
* Pfaff transformation for -1 <= x < -1/2;
* the 1 - x connection formula for 1/2 < x < 1 when c - a - b is not close to an integer;
* otherwise, or whenever a series is ill-conditioned, numerical continuation of the
  hypergeometric ODE from a point near 0 where the series is well-conditioned.

On x < 0 the continuation runs in t with x = -sinh^2 t, where the equation reads
u'' + [(2c-1)coth t + (2(a+b)-2c+1)tanh t] u' + 4ab u = 0 and the solutions
behave like (1+t)e^{-2 min(Re a, Re b) t}.
"""
import cmath
import logging
import math
from typing import Optional, Tuple

import numpy as np
from scipy.integrate import solve_ivp

from src.errors import DomainError, ParameterPole, ToleranceNotMet
from src.specfun.gamma import gamma_complex, is_nonpositive_integer, rgamma_complex

logger = logging.getLogger(__name__)

_MAX_TERMS = 4000
_TERM_TOL = 1e-17
_COND_LIMIT = 1e3
_INTEGER_GAP = 0.1
_T_START_MAX = 0.25
_DEFAULT_RTOL = 1e-12


def _canonical(a: complex, b: complex) -> Tuple[complex, complex]:
    """Order (a, b) so that swapped arguments give bitwise identical results."""
    return (a, b) if (a.real, a.imag) <= (b.real, b.imag) else (b, a)


def _series(a: complex, b: complex, c: complex, x: float) -> Tuple[complex, float]:
    """Power series sum and its condition number max|term| / |sum|."""
    term = 1 + 0j
    total = 1 + 0j
    biggest = 1.0
    small = 0
    for j in range(_MAX_TERMS):
        term *= (a + j) * (b + j) / ((c + j) * (j + 1)) * x
        total += term
        mag = abs(term)
        biggest = max(biggest, mag)
        if mag <= _TERM_TOL * abs(total):
            small += 1
            if small == 2:
                break
        else:
            small = 0
    else:
        return total, math.inf
    return total, (biggest / abs(total) if total != 0 else math.inf)


def series_table(a: np.ndarray, b: np.ndarray, c, x: np.ndarray) -> np.ndarray:
    """Vectorized power series with broadcasting; caller guarantees |x| is small."""
    a, b, c, x = np.broadcast_arrays(
        np.asarray(a, dtype=complex), np.asarray(b, dtype=complex),
        np.asarray(c, dtype=complex), np.asarray(x, dtype=float),
    )
    term = np.ones(a.shape, dtype=complex)
    total = np.ones(a.shape, dtype=complex)
    small = 0
    for j in range(_MAX_TERMS):
        term = term * (a + j) * (b + j) / ((c + j) * (j + 1)) * x
        total = total + term
        if np.all(np.abs(term) <= _TERM_TOL * np.abs(total)):
            small += 1
            if small == 2:
                break
        else:
            small = 0
    return total


def _is_polynomial(a: complex, b: complex) -> bool:
    return is_nonpositive_integer(a) or is_nonpositive_integer(b)


def _start_point(a, b) -> float:
    """Largest |x0| <= sinh^2(1/4) with |ab x0| <= 1/16."""
    scale = float(np.max(np.abs(np.asarray(a) * np.asarray(b)) + np.abs(a) + np.abs(b)))
    return min(math.sinh(_T_START_MAX) ** 2, 0.0625 / (1.0 + scale))


def negative_axis_table(
    a: np.ndarray,
    b: np.ndarray,
    c: complex,
    ts: np.ndarray,
    rtol: Optional[float] = None,
) -> Tuple[np.ndarray, np.ndarray]:
    """F(a_i, b_i; c; -sinh^2 t_j) and its t-derivative for every row i and node t_j.

    ``ts`` must be sorted ascending and non-negative. Returns arrays of shape
    (len(a), len(ts)).
    """
    a = np.asarray(a, dtype=complex).reshape(-1)
    b = np.asarray(b, dtype=complex).reshape(-1)
    ts = np.asarray(ts, dtype=float).reshape(-1)
    c = complex(c)
    if ts.size and (ts[0] < 0 or np.any(np.diff(ts) < 0)):
        raise DomainError("nodes must be non-negative and sorted")
    rtol = _DEFAULT_RTOL if rtol is None else rtol
    n = a.size
    values = np.empty((n, ts.size), dtype=complex)
    derivs = np.empty((n, ts.size), dtype=complex)

    t0 = math.asinh(math.sqrt(_start_point(a, b)))
    near = ts <= t0
    if np.any(near):
        x = -np.sinh(ts[near]) ** 2
        values[:, near] = series_table(a[:, None], b[:, None], c, x[None, :])
        dF = series_table(a[:, None] + 1, b[:, None] + 1, c + 1, x[None, :])
        derivs[:, near] = (a * b / c)[:, None] * dF * (-np.sinh(2 * ts[near]))[None, :]
    far = ~near
    if not np.any(far):
        return values, derivs

    x0 = -math.sinh(t0) ** 2
    u0 = series_table(a, b, c, x0)
    du0 = a * b / c * series_table(a + 1, b + 1, c + 1, x0) * (-math.sinh(2 * t0))

    kappa = 2.0 * np.minimum(a.real, b.real)
    P_coth = 2 * c - 1
    P_tanh = 2 * (a + b) - 2 * c + 1
    Q = 4 * a * b

    def envelope(t, k=kappa):
        return (1.0 + t) * np.exp(-k * t)

    def growth(t, k=kappa):
        return 1.0 / (1.0 + t) - k

    def rhs(t, y):
        v, w = y[:n], y[n:]
        g = growth(t)
        dg = -1.0 / (1.0 + t) ** 2
        P = P_coth / math.tanh(t) + P_tanh * math.tanh(t)
        dw = -(2 * g + P) * w - (dg + g * g + P * g + Q) * v
        return np.concatenate([w, dw])

    E0 = envelope(t0)
    y0 = np.concatenate([u0 / E0, (du0 - growth(t0) * u0) / E0])
    atol = np.concatenate([np.full(n, 1e-14), 1e-14 * (1.0 + np.abs(a) + np.abs(b))])
    t_eval = ts[far]
    sol = solve_ivp(rhs, (t0, float(t_eval[-1])), y0, method="DOP853",
                    t_eval=t_eval, rtol=rtol, atol=atol)
    if sol.status != 0 or sol.y.shape[1] != t_eval.size:
        raise ToleranceNotMet(f"hypergeometric continuation failed: {sol.message}")
    # rows are lambdas, columns are nodes
    E = envelope(t_eval[None, :], kappa[:, None])
    v, w = sol.y[:n], sol.y[n:]
    g = growth(t_eval[None, :], kappa[:, None])
    values[:, far] = v * E
    derivs[:, far] = (w + g * v) * E
    return values, derivs


def _continue_positive(a: complex, b: complex, c: complex, x: float, rtol: float) -> complex:
    """Integrate the hypergeometric ODE in x from a small x0 > 0 up to x < 1."""
    x0 = min(x, _start_point(a, b))
    y0 = series_table(a, b, c, x0).item()
    dy0 = (a * b / c * series_table(a + 1, b + 1, c + 1, x0)).item()
    if x0 == x:
        return y0

    def rhs(s, y):
        return np.array([y[1], (a * b * y[0] - (c - (a + b + 1) * s) * y[1]) / (s * (1 - s))])

    scale = abs(y0) + abs(dy0)
    sol = solve_ivp(rhs, (x0, x), np.array([y0, dy0], dtype=complex), method="DOP853",
                    rtol=rtol, atol=1e-15 * scale)
    if sol.status != 0:
        raise ToleranceNotMet(f"hypergeometric continuation failed: {sol.message}")
    return complex(sol.y[0, -1])


def _connection_one_minus_x(a: complex, b: complex, c: complex, x: float) -> Optional[complex]:
    """2F1 via the 1 - x connection formula, or None if it would be inaccurate."""
    s = c - a - b
    if abs(s.imag) < _INTEGER_GAP and abs(s.real - round(s.real)) < _INTEGER_GAP:
        return None
    y = 1 - x
    f1, k1 = _series(a, b, 1 - s, y)
    f2, k2 = _series(c - a, c - b, 1 + s, y)
    if max(k1, k2) > _COND_LIMIT:
        return None
    gc = gamma_complex(c)
    A1 = gc * gamma_complex(s) * rgamma_complex(c - a) * rgamma_complex(c - b)
    A2 = gc * gamma_complex(-s) * rgamma_complex(a) * rgamma_complex(b)
    return A1 * f1 + A2 * cmath.exp(s * math.log(y)) * f2


def hyp2f1(a: complex, b: complex, c: complex, x: float, rtol: Optional[float] = None) -> complex:
    """Gauss hypergeometric function on the real axis x < 1 (analytic continuation)."""
    a, b, c, x = complex(a), complex(b), complex(c), float(x)
    if is_nonpositive_integer(c):
        raise ParameterPole(f"2F1 lower parameter c={c} is a non-positive integer", point=c)
    if not x < 1:
        raise DomainError(f"2F1 is evaluated for x < 1 only, got x={x}")
    rtol = _DEFAULT_RTOL if rtol is None else rtol
    a, b = _canonical(a, b)
    if x == 0 or a == 0 or b == 0:
        return 1 + 0j
    if _is_polynomial(a, b):
        return _series(a, b, c, x)[0]

    if abs(x) <= 0.5:
        value, cond = _series(a, b, c, x)
        if cond <= _COND_LIMIT:
            return value
    elif x < 0 and x >= -1:
        value, cond = _series(a, c - b, c, x / (x - 1))
        if cond <= _COND_LIMIT:
            return cmath.exp(-a * math.log(1 - x)) * value
    elif x > 0.5:
        value = _connection_one_minus_x(a, b, c, x)
        if value is not None:
            return value

    logger.debug(f"2F1({a}, {b}; {c}; {x}): series ill-conditioned, continuing the ODE")
    if x < 0:
        t = math.asinh(math.sqrt(-x))
        values, _ = negative_axis_table(np.array([a]), np.array([b]), c, np.array([t]), rtol)
        return complex(values[0, 0])
    return _continue_positive(a, b, c, x, rtol)


def hyp2f1_derivative(a: complex, b: complex, c: complex, x: float) -> complex:
    """d/dx 2F1(a, b; c; x) = (ab/c) 2F1(a+1, b+1; c+1; x)."""
    a, b, c = complex(a), complex(b), complex(c)
    if is_nonpositive_integer(c):
        raise ParameterPole(f"2F1 lower parameter c={c} is a non-positive integer", point=c)
    if a == 0 or b == 0:
        if not float(x) < 1:
            raise DomainError(f"2F1 is evaluated for x < 1 only, got x={x}")
        return 0j
    return a * b / c * hyp2f1(a + 1, b + 1, c + 1, x)
