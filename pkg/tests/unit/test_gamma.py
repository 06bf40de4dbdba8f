"""Tests for the complex Gamma function."""
import cmath
import math

import mpmath
import numpy as np
import pytest

from src.errors import PoleError
from src.specfun.gamma import (
    gamma_array,
    gamma_complex,
    is_nonpositive_integer,
    log_gamma_complex,
    pochhammer,
    rgamma_complex,
)

COMPLEX_POINTS = [0.3 + 2j, -2.5 + 0.7j, 4 - 3j, -7.3 + 0.1j, 1.5 + 10j, 0.5 - 0.5j]


class TestGammaComplex:
    def test_factorials(self):
        for n in range(1, 10):
            assert gamma_complex(n) == pytest.approx(math.factorial(n - 1), rel=1e-13)

    def test_half_integer(self):
        assert gamma_complex(0.5) == pytest.approx(math.sqrt(math.pi), rel=1e-14)
        assert gamma_complex(-0.5) == pytest.approx(-2 * math.sqrt(math.pi), rel=1e-13)

    @pytest.mark.parametrize("z", COMPLEX_POINTS)
    def test_matches_mpmath(self, z):
        expected = complex(mpmath.gamma(mpmath.mpc(z.real, z.imag)))
        assert gamma_complex(z) == pytest.approx(expected, rel=1e-11)

    @pytest.mark.parametrize("z", [0, -1, -3, -10.0])
    def test_poles_raise(self, z):
        with pytest.raises(PoleError) as exc:
            gamma_complex(z)
        assert exc.value.point == complex(z)

    def test_reflection_formula(self):
        z = 0.25 + 1.5j
        product = gamma_complex(z) * gamma_complex(1 - z)
        assert product == pytest.approx(math.pi / cmath.sin(math.pi * z), rel=1e-12)

    def test_conjugate_symmetry(self):
        z = -1.3 + 2.2j
        assert gamma_complex(z.conjugate()) == pytest.approx(gamma_complex(z).conjugate(), rel=1e-13)

    def test_vectorized(self):
        values = gamma_array(np.array([1.0, 2.0, 3.0 + 0j]))
        np.testing.assert_allclose(values, [1, 1, 2], rtol=1e-13)


class TestReciprocalGamma:
    @pytest.mark.parametrize("n", [0, -1, -2, -7])
    def test_zero_at_nonpositive_integers(self, n):
        assert rgamma_complex(n) == 0

    @pytest.mark.parametrize("z", COMPLEX_POINTS)
    def test_inverse_of_gamma(self, z):
        assert rgamma_complex(z) * gamma_complex(z) == pytest.approx(1, rel=1e-12)

    def test_matches_mpmath(self):
        z = -3.5 + 0.25j
        expected = complex(mpmath.rgamma(mpmath.mpc(z.real, z.imag)))
        assert rgamma_complex(z) == pytest.approx(expected, rel=1e-11)


class TestLogGamma:
    @pytest.mark.parametrize("z", COMPLEX_POINTS)
    def test_exponential_is_gamma(self, z):
        assert cmath.exp(log_gamma_complex(z)) == pytest.approx(gamma_complex(z), rel=1e-11)

    def test_large_argument_does_not_overflow(self):
        value = log_gamma_complex(400 + 3j)
        expected = complex(mpmath.loggamma(mpmath.mpc(400, 3)))
        assert value.real == pytest.approx(expected.real, rel=1e-13)

    def test_pole(self):
        with pytest.raises(PoleError):
            log_gamma_complex(-4)


class TestPochhammer:
    def test_values(self):
        assert pochhammer(0.5, 0) == 1
        assert pochhammer(0.5, 3) == pytest.approx(0.5 * 1.5 * 2.5)
        assert pochhammer(1, 5) == pytest.approx(120)

    def test_complex_argument(self):
        a = 0.5 + 2j
        assert pochhammer(a, 2) == pytest.approx(a * (a + 1))

    def test_negative_order(self):
        with pytest.raises(ValueError):
            pochhammer(1.0, -1)


def test_is_nonpositive_integer():
    assert is_nonpositive_integer(0)
    assert is_nonpositive_integer(-3.0)
    assert not is_nonpositive_integer(-3 + 1e-9j)
    assert not is_nonpositive_integer(-2.5)
    assert not is_nonpositive_integer(1)
