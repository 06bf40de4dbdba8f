"""Complex Gamma function: Lanczos sum (g=7, n=9) with reflection for Re z < 1/2."""
import cmath
import math
from typing import Union

import numpy as np

from src.errors import PoleError

Number = Union[complex, float, int]

_G = 7
_COEFFS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_HALF_LOG_2PI = 0.5 * math.log(2 * math.pi)


def is_nonpositive_integer(z: Number) -> bool:
    z = complex(z)
    return z.imag == 0 and z.real <= 0 and z.real == math.floor(z.real)


def _log_gamma_right(z: complex) -> complex:
    """log Gamma(z) for Re z >= 1/2 (branch continuous on that half-plane)."""
    z = z - 1
    x = _COEFFS[0]
    for i in range(1, _G + 2):
        x += _COEFFS[i] / (z + i)
    t = z + _G + 0.5
    return _HALF_LOG_2PI + (z + 0.5) * cmath.log(t) - t + cmath.log(x)


def log_gamma_complex(z: Number) -> complex:
    """log Gamma(z); exp of the result is Gamma(z), imaginary part not reduced mod 2pi."""
    z = complex(z)
    if is_nonpositive_integer(z):
        raise PoleError(f"Gamma has a pole at {z}", point=z)
    if z.real < 0.5:
        return cmath.log(math.pi) - cmath.log(cmath.sin(math.pi * z)) - _log_gamma_right(1 - z)
    return _log_gamma_right(z)


def gamma_complex(z: Number) -> complex:
    """Gamma(z) for complex z off the non-positive integers."""
    z = complex(z)
    if is_nonpositive_integer(z):
        raise PoleError(f"Gamma has a pole at {z}", point=z)
    if z.real < 0.5:
        return math.pi / (cmath.sin(math.pi * z) * cmath.exp(_log_gamma_right(1 - z)))
    return cmath.exp(_log_gamma_right(z))


def rgamma_complex(z: Number) -> complex:
    """1/Gamma(z); entire, exactly 0 at the non-positive integers."""
    z = complex(z)
    if is_nonpositive_integer(z):
        return 0j
    if z.real < 0.5:
        return cmath.sin(math.pi * z) * cmath.exp(_log_gamma_right(1 - z)) / math.pi
    return cmath.exp(-_log_gamma_right(z))


def pochhammer(a: Number, n: int) -> complex:
    """Rising factorial (a)_n = a (a+1) ... (a+n-1)."""
    if n < 0:
        raise ValueError(f"order must be >= 0, got {n}")
    out = 1 + 0j
    a = complex(a)
    for j in range(n):
        out *= a + j
    return out


gamma_array = np.vectorize(gamma_complex, otypes=[complex])
rgamma_array = np.vectorize(rgamma_complex, otypes=[complex])
