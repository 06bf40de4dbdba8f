"""Tests for spherical functions, the spherical transform and radial inversion on NA."""
import math

import numpy as np
import pytest

from src.errors import DomainError
from src.models.params import NAParams
from src.models.profiles import RadialProfile
from src.na.spherical import (
    RadialQuadrature,
    c_calibrated,
    density_singular_set,
    eigenvalue,
    plancherel_density,
    projection_table,
    radial_density,
    radial_drift,
    radial_inversion,
    spectral_projection_radial,
    spherical_phi_na,
    spherical_transform,
    spherical_transform_table,
)
from src.numerics.quadrature import integrate_radial


class TestSphericalFunction:
    def test_one_at_identity(self, na_params):
        assert spherical_phi_na(na_params, 2.3, 0.0) == 1

    def test_even_in_lambda(self, na_params):
        assert spherical_phi_na(na_params, 1.2 + 0.4j, 0.9) == spherical_phi_na(na_params, -1.2 - 0.4j, 0.9)

    def test_trivial_at_half_q(self, na_params):
        """Phi_{i Q/2} is the constant 1."""
        assert spherical_phi_na(na_params, 1j * na_params.Q / 2, 1.7) == pytest.approx(1.0, abs=1e-12)

    def test_negative_distance(self, na_params):
        with pytest.raises(DomainError):
            spherical_phi_na(na_params, 1.0, -0.5)

    def test_eigenvalue(self, na_params):
        assert eigenvalue(na_params, 0.0) == -1.0
        assert eigenvalue(na_params, 2.0) == -5.0


class TestDensities:
    def test_radial_density_vanishes_at_identity(self, na_params):
        assert radial_density(na_params, 0.0) == 0.0

    @pytest.mark.parametrize("rho", [0.4, 1.3, 3.0])
    def test_drift_is_log_derivative(self, na_params, rho):
        h = 1e-5
        derivative = (radial_density(na_params, rho + h) - radial_density(na_params, rho - h)) / (2 * h)
        assert derivative / radial_density(na_params, rho) == pytest.approx(radial_drift(na_params, rho), rel=1e-8)

    @pytest.mark.parametrize("lam", [0.3, 2.0, 11.0])
    def test_plancherel_density_uses_calibrated_c(self, na_params, lam):
        expected = na_params.c_mk / (4 * math.pi) * abs(c_calibrated(na_params, lam)) ** -2
        assert plancherel_density(na_params, lam) == pytest.approx(expected, rel=1e-12)

    def test_plancherel_density_vanishes_at_zero(self, na_params):
        assert plancherel_density(na_params, 0.0) == 0

    def test_singular_set(self, na_params):
        assert density_singular_set(na_params, 3.0) == [-3j, -2j, -1j, 1j, 2j, 3j]

    def test_singular_set_is_symmetric(self):
        poles = density_singular_set(NAParams(4, 3), 4.0)
        assert poles
        assert sorted(p.imag for p in poles) == sorted(-p.imag for p in poles)


class TestSphericalTransform:
    def test_matches_adaptive_quadrature(self, na_params, radial_bump):
        lam = 1.7

        def integrand(r: float) -> complex:
            return complex(radial_bump(r)) * spherical_phi_na(na_params, lam, r) * radial_density(na_params, r)

        expected = integrate_radial(integrand, 0.0, 1.0)
        assert spherical_transform(radial_bump, lam, na_params) == pytest.approx(expected, rel=1e-8)

    def test_even_bitwise(self, na_params, radial_bump):
        lam = 2.5 - 0.5j
        assert spherical_transform(radial_bump, lam, na_params) == spherical_transform(radial_bump, -lam, na_params)

    def test_at_trivial_character_is_the_mass(self, na_params, radial_bump):
        quad = RadialQuadrature(na_params, 1.0)
        expected = float(np.sum(quad.weights * radial_bump(quad.nodes)))
        assert spherical_transform(radial_bump, 1j, na_params) == pytest.approx(expected, rel=1e-10)

    def test_zero_profile(self, na_params):
        values = spherical_transform_table(RadialProfile.zero(), [0.5, 1.0], na_params)
        np.testing.assert_array_equal(values, [0, 0])

    def test_projection_table_matches_pointwise(self, na_params, radial_bump):
        lams, rhos = [0.5, 3.0], [0.0, 0.8]
        table = projection_table(radial_bump, lams, rhos, na_params)
        for i, lam in enumerate(lams):
            for j, rho in enumerate(rhos):
                expected = spectral_projection_radial(radial_bump, lam, rho, na_params)
                assert table[i, j] == pytest.approx(expected, rel=1e-9)


class TestInversion:
    def test_plancherel_norm(self, na_params, gaussian):
        quad = RadialQuadrature(na_params, gaussian.support)
        expected = integrate_radial(lambda r: math.exp(-2 * r * r) * radial_density(na_params, r), 0.0, 6.0)
        assert quad.norm_squared(gaussian) == pytest.approx(expected.real, rel=1e-10)

    def test_radial_inversion_round_trip(self, na_params, gaussian):
        rhos = [0.0, 0.5, 1.0, 2.0]
        values, tail = radial_inversion(gaussian, rhos, na_params, lambda_max=20.0, step=0.05)
        np.testing.assert_allclose(values.real, np.exp(-np.square(rhos)), atol=1e-8)
        np.testing.assert_allclose(values.imag, 0.0, atol=1e-10)
        assert tail < 1e-10

    def test_radial_inversion_is_thread_independent(self, na_params, radial_bump):
        serial, _ = radial_inversion(radial_bump, [0.2], na_params, lambda_max=5.0, step=0.1, threads=1)
        pooled, _ = radial_inversion(radial_bump, [0.2], na_params, lambda_max=5.0, step=0.1, threads=3)
        assert np.array_equal(serial, pooled)
