"""Tests for Legendre functions of complex degree."""
import math

import mpmath
import pytest

from src.errors import DomainError
from src.specfun.legendre import MEHLER_CONSTANT, legendre_p, mehler_integral


@pytest.mark.parametrize("nu, x", [(-0.5 + 1j, 1.5), (-0.5 + 4j, 3.0), (0.3, 2.0), (2.0, 5.0)])
def test_matches_mpmath(nu, x):
    expected = complex(mpmath.legenp(nu, 0, x, type=3))
    assert legendre_p(nu, x) == pytest.approx(expected, rel=1e-9, abs=1e-12)


def test_integer_degree_is_polynomial():
    x = 1.7
    assert legendre_p(2, x) == pytest.approx((3 * x * x - 1) / 2, rel=1e-14)


def test_degree_reflection_is_bitwise():
    nu = -0.5 + 2.5j
    assert legendre_p(nu, 2.2) == legendre_p(-nu - 1, 2.2)


def test_value_at_one():
    assert legendre_p(-0.5 + 7j, 1.0) == 1


def test_domain():
    with pytest.raises(DomainError):
        legendre_p(0.5, 0.99)
    with pytest.raises(DomainError):
        mehler_integral(0.5, 0.5)


@pytest.mark.parametrize("lam, r", [(0.5, 0.4), (3.0, 1.0)])
def test_laplace_integral(lam, r):
    nu = -(1 + 1j * lam) / 2
    x = math.cosh(2 * r)
    assert mehler_integral(nu, x) == pytest.approx(MEHLER_CONSTANT * legendre_p(nu, x), abs=1e-10)
