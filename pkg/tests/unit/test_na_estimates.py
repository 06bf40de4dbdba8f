"""Tests for the Plancherel, L^2 bound, Koornwinder and Paley-Wiener checks on NA."""
import math

import numpy as np
import pytest

from src.errors import DomainError
from src.models.grids import ComplexGrid
from src.models.params import JacobiParams, NAParams
from src.models.points import NAPoint
from src.models.profiles import RadialProfile
from src.na import estimates
from src.na.estimates import (
    compact_set_bound_check,
    compact_set_constant,
    eigen_residual_order,
    intertwining_check,
    koornwinder_bound_check,
    l2_projection_bound_check,
    phi_pfaff,
    plancherel_check,
    projection_conditions_na,
    pw_envelope_radial,
    radial_orbit,
)
from src.na.group import geodesic_rho
from src.na.spherical import spherical_phi_na

SMALL_GRID = ComplexGrid.from_ranges(-4.0, 4.0, 1.0, -1.5, 1.5, 0.5)


class TestPlancherel:
    def test_identity_for_fast_decay(self, na_params, gaussian):
        lhs, rhs = plancherel_check(gaussian, na_params, lambda_max=20.0, step=0.05)
        assert rhs == pytest.approx(lhs, rel=1e-8)

    def test_zero_function(self, na_params):
        assert plancherel_check(RadialProfile.zero(), na_params) == (0.0, 0.0)


class TestL2Bounds:
    def test_equality_at_the_identity(self, na_params, gaussian):
        lhs, rhs = l2_projection_bound_check(gaussian, 0.0, na_params, lambda_max=20.0, step=0.05)
        assert lhs == pytest.approx(rhs, rel=1e-8)

    @pytest.mark.parametrize("rho", [0.5, 2.0])
    def test_bound_away_from_the_identity(self, na_params, gaussian, rho):
        lhs, rhs = l2_projection_bound_check(gaussian, rho, na_params, lambda_max=20.0, step=0.05)
        assert 0 < lhs <= rhs

    def test_negative_distance(self, na_params, gaussian):
        with pytest.raises(DomainError):
            l2_projection_bound_check(gaussian, -1.0, na_params)

    def test_compact_set_constant(self, na_params):
        expected = 4 * math.pi**1.5 / math.gamma(1.5) * na_params.c_mk / (4 * math.pi)
        assert compact_set_constant(na_params) == pytest.approx(expected)

    def test_compact_set_bound(self, na_params, gaussian):
        result = compact_set_bound_check(gaussian, [0.0, 1.0], na_params, lambda_max=20.0, step=0.05)
        assert result["rhos"] == [0.0, 1.0]
        assert result["lhs"][1] <= result["lhs"][0] * (1 + 1e-9)
        expected = na_params.c_mk / (4 * math.pi) / compact_set_constant(na_params)
        assert result["c_K"] == pytest.approx(expected, rel=1e-6)

    def test_compact_set_needs_points(self, na_params, gaussian):
        with pytest.raises(DomainError):
            compact_set_bound_check(gaussian, [], na_params)

    def test_compact_set_zero_function(self, na_params):
        result = compact_set_bound_check(RadialProfile.zero(), [0.5], na_params)
        assert result["c_K"] == 0.0


class TestKoornwinder:
    @pytest.mark.parametrize("n", [0, 1])
    def test_certificate_is_finite(self, na_params, n):
        fit = koornwinder_bound_check(na_params.jacobi, n, SMALL_GRID, t_max=4.0)
        assert fit.is_finite
        assert fit.model_order == n
        assert fit.fitted_constant > 0

    def test_normalized_at_the_origin(self, na_params):
        fit = koornwinder_bound_check(na_params.jacobi, 0, ComplexGrid((0.0,), (0.0,)), t_max=1.0)
        assert fit.fitted_constant >= 1.0

    def test_short_window_keeps_growing_at_zero(self, na_params):
        # phi_0(t) ~ (8t - 8 log 2) e^{-2t}, so C(t_max) climbs towards 8
        origin = ComplexGrid((0.0,), (0.0,))
        C4, C8 = (koornwinder_bound_check(na_params.jacobi, 0, origin, t_max=t).fitted_constant for t in (4.0, 8.0))
        assert C4 < C8 < 8.0
        assert C8 / C4 - 1 > 0.05

    @pytest.mark.parametrize("n", [0, 1])
    def test_long_window_growth_is_bounded(self, na_params, n):
        origin = ComplexGrid((0.0,), (0.0,))
        C32, C64 = (koornwinder_bound_check(na_params.jacobi, n, origin, t_max=t).fitted_constant for t in (32.0, 64.0))
        assert C64 >= C32
        assert C64 / C32 - 1 <= 0.05

    def test_invalid_order(self, na_params):
        with pytest.raises(DomainError):
            koornwinder_bound_check(na_params.jacobi, 2, SMALL_GRID, t_max=1.0)

    def test_alpha_range(self):
        with pytest.raises(DomainError):
            koornwinder_bound_check(JacobiParams(-0.75, 0.0), 0, SMALL_GRID, t_max=1.0)


class TestPaleyWiener:
    def test_zero_function(self, na_params):
        fit = pw_envelope_radial(RadialProfile.zero(), na_params, SMALL_GRID, 2)
        assert fit.fitted_constant == 0.0

    def test_certificate_shrinks_with_wider_envelope(self, na_params, radial_bump):
        tight = pw_envelope_radial(radial_bump, na_params, SMALL_GRID, 1, a=1.0)
        loose = pw_envelope_radial(radial_bump, na_params, SMALL_GRID, 1, a=2.0)
        assert 0 < loose.fitted_constant <= tight.fitted_constant

    def test_excludes_the_singular_set(self, na_params, radial_bump):
        fit = pw_envelope_radial(radial_bump, na_params, SMALL_GRID, 1)
        assert fit.n_points == SMALL_GRID.points(exclude=[-1j, 1j]).size


class TestProjectionConditions:
    def test_conditions_hold_for_a_bump(self, na_params, radial_bump):
        metrics = projection_conditions_na(radial_bump, na_params, grid=SMALL_GRID)
        assert metrics["radiality"] <= 1e-10
        assert metrics["evenness"] <= 1e-8
        assert metrics["eigen_order"] >= 1.9
        assert metrics["divisibility"] <= 1e-6
        for N0 in range(1, 5):
            assert np.isfinite(metrics[f"envelope_C{N0}"])

    def test_conditions_away_from_the_identity(self, na_params, radial_bump):
        metrics = projection_conditions_na(radial_bump, na_params, grid=SMALL_GRID, rho=0.8)
        assert metrics["evenness"] <= 1e-8
        assert metrics["divisibility"] <= 1e-6

    def test_radiality_sees_a_wrong_distance(self, mocker, na_params, radial_bump):
        original = estimates.geodesic_rho
        mocker.patch.object(estimates, "geodesic_rho", side_effect=lambda y: original(y) + 0.1 * math.log(y.a))
        metrics = projection_conditions_na(radial_bump, na_params, grid=SMALL_GRID)
        assert metrics["radiality"] > 1e-3

    def test_evenness_sees_an_odd_part(self, mocker, na_params, radial_bump):
        original = estimates.phi_pfaff
        mocker.patch.object(
            estimates, "phi_pfaff",
            side_effect=lambda p, lam, r: original(p, lam, r) * (1.01 if lam < 0 else 1.0),
        )
        metrics = projection_conditions_na(radial_bump, na_params, grid=SMALL_GRID)
        assert metrics["evenness"] > 1e-3

    def test_divisibility_sees_a_wrong_density(self, mocker, na_params, radial_bump):
        original = estimates.plancherel_density
        mocker.patch.object(estimates, "plancherel_density", side_effect=lambda p, lam: 2 * original(p, lam))
        metrics = projection_conditions_na(radial_bump, na_params, grid=SMALL_GRID)
        assert metrics["divisibility"] == pytest.approx(0.5, rel=1e-4)


class TestPfaffForm:
    @pytest.mark.parametrize("lam", [0.5, 2.0, 1.0 + 0.5j, -1.5])
    @pytest.mark.parametrize("rho", [0.0, 0.7, 2.5])
    def test_matches_the_spherical_function(self, na_params, lam, rho):
        expected = spherical_phi_na(na_params, lam, rho)
        assert phi_pfaff(na_params, lam, rho) == pytest.approx(expected, rel=1e-10, abs=1e-14)

    def test_negative_distance(self, na_params):
        with pytest.raises(DomainError):
            phi_pfaff(na_params, 1.0, -0.1)


class TestRadialOrbit:
    def test_orbit_keeps_the_distance(self, na_params):
        x = NAPoint([0.5, -0.2], [0.3], 1.7)
        orbit = radial_orbit(x, na_params)
        assert len(orbit) == 5
        for y in orbit:
            assert geodesic_rho(y) == pytest.approx(geodesic_rho(x), rel=1e-10)

    def test_orbit_without_an_htype_structure(self):
        p = NAParams(4, 3)
        x = NAPoint([0.5, -0.2, 0.1, 0.4], [0.3, 0.0, -0.6], 0.8)
        orbit = radial_orbit(x, p)
        assert len(orbit) == 3
        for y in orbit:
            assert geodesic_rho(y) == pytest.approx(geodesic_rho(x), rel=1e-10)


class TestEigenEquations:
    def test_finite_difference_order(self, na_params):
        order, residuals = eigen_residual_order(na_params, 2.0, 1.0)
        assert order >= 1.9
        assert residuals[-1] < residuals[0]

    def test_intertwining(self, na_params, gaussian):
        result = intertwining_check(gaussian, 1.5, na_params, rho=0.5)
        assert result["relative_gap"] <= 1e-5
        assert result["relative_gap_alt"] >= 1e-2
