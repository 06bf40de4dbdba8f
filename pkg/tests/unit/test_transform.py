"""Tests for the Fourier-Helgason transform, spectral projection and inversion on the disk."""
import math

import numpy as np
import pytest

from src.errors import DomainError, PoleError, TruncationWarning
from src.models.points import BoundaryPoint
from src.models.profiles import RadialProfile, SO2FiniteFunction
from src.spectral.closed_form import closed_form_projection
from src.spectral.transform import (
    PolarRule,
    ProjectionFamily,
    fh_boundary_grid,
    fh_forward_disk,
    fh_mode_coefficient,
    inversion_disk,
    projection_at_points,
    projection_by_convolution,
    q_transform,
    spectral_projection_disk,
)

Z = 0.3 + 0.2j


def gauss4(r):
    return np.exp(-4 * np.asarray(r) ** 2)


@pytest.fixture
def disk_gaussian():
    """exp(-4 r^2) cut at r = 3, far below double precision there."""
    return SO2FiniteFunction({0: RadialProfile(support=3.0, func=gauss4, key=("gauss4",))}, 3.0)


class TestPolarRule:
    def test_integrates_the_area(self):
        rule = PolarRule.build(1.0, 64, 8)
        area = rule.integrate(np.ones((64, 8)))
        assert area == pytest.approx(math.pi * (math.cosh(2.0) - 1) / 2, rel=1e-12)

    def test_points_follow_the_centre(self):
        rule = PolarRule.build(0.5, 4, 8)
        assert rule.points(0j).shape == (4, 8)
        assert np.all(np.abs(rule.points(0.6)) < 1)

    @pytest.mark.parametrize("R, n_theta", [(0.0, 16), (1.0, 4)])
    def test_invalid(self, R, n_theta):
        with pytest.raises(DomainError):
            PolarRule.build(R, 16, n_theta)


class TestForwardTransform:
    def test_circular_convolution_matches_direct_sums(self, disk_bump_mode1):
        rule = PolarRule.build(1.0, 32, 16)
        lam = 1.5 + 0.3j
        w, values = fh_boundary_grid(disk_bump_mode1, lam, rule)
        for j in (0, 5, 11):
            assert values[j] == pytest.approx(fh_forward_disk(disk_bump_mode1, lam, w[j], rule), rel=1e-11)

    def test_off_centre_uses_direct_sums(self):
        f = SO2FiniteFunction.bump(0.5, 0, z0=0.2 - 0.1j)
        rule = PolarRule.build(0.5, 16, 16)
        w, values = fh_boundary_grid(f, 2.0, rule)
        assert values[3] == pytest.approx(fh_forward_disk(f, 2.0, BoundaryPoint(float(np.angle(w[3]))), rule),
                                          rel=1e-12)

    @pytest.mark.parametrize("n", [0, 1, 2])
    def test_mode_coefficient_is_the_fourier_coefficient(self, disk_bump_mode1, n):
        lam = 2.0
        w, values = fh_boundary_grid(disk_bump_mode1, lam)
        coefficient = np.mean(values * w ** (-n))
        assert fh_mode_coefficient(disk_bump_mode1, lam, n) == pytest.approx(complex(coefficient), rel=1e-8, abs=1e-14)

    def test_zero_function(self):
        w, values = fh_boundary_grid(SO2FiniteFunction.zero(), 1.0)
        assert not values.any()
        assert q_transform(SO2FiniteFunction.zero(), 1.0, Z) == 0


class TestProjection:
    @pytest.mark.parametrize("lam", [0.7, 2.5, 1.5 + 0.5j])
    def test_quadrature_matches_closed_form(self, disk_bump, lam):
        assert spectral_projection_disk(disk_bump, lam, Z) == pytest.approx(
            closed_form_projection(disk_bump, lam, Z), rel=1e-6)

    def test_quadrature_matches_closed_form_mode_one(self, disk_bump_mode1):
        assert spectral_projection_disk(disk_bump_mode1, 1.2, Z) == pytest.approx(
            closed_form_projection(disk_bump_mode1, 1.2, Z), rel=1e-6)

    def test_convolution_form(self, disk_bump):
        rule = PolarRule.build(1.0, 64, 128)
        direct = spectral_projection_disk(disk_bump, 1.5, 0.2, rule)
        assert projection_by_convolution(disk_bump, 1.5, 0.2, rule) == pytest.approx(direct, rel=1e-6)

    def test_several_points(self, disk_bump_mode1):
        rule = PolarRule.build(1.0, 32, 32)
        zs = [0.1, Z, -0.4j]
        values = projection_at_points(disk_bump_mode1, 2.0, zs, rule)
        for z, value in zip(zs, values):
            assert value == pytest.approx(spectral_projection_disk(disk_bump_mode1, 2.0, z, rule), rel=1e-12)

    def test_vanishes_at_the_origin(self, disk_bump):
        assert spectral_projection_disk(disk_bump, 0.0, Z) == 0
        assert not projection_at_points(disk_bump, 0.0, [Z]).any()

    def test_pole(self, disk_bump):
        with pytest.raises(PoleError):
            spectral_projection_disk(disk_bump, 1j, Z)

    def test_outside_the_disk(self, disk_bump):
        with pytest.raises(DomainError):
            q_transform(disk_bump, 1.0, 1.5)

    def test_q_transform_is_entire(self, disk_bump):
        """Q_lambda stays finite at a pole of the density."""
        value = q_transform(disk_bump, 1j, Z, PolarRule.build(1.0, 32, 32))
        assert math.isfinite(abs(value))


class TestProjectionFamily:
    def test_methods_agree(self, disk_bump):
        closed = ProjectionFamily(disk_bump)
        quadrature = ProjectionFamily(disk_bump, method="quadrature")
        assert closed(2.0)(Z) == pytest.approx(quadrature.evaluate(2.0, Z), rel=1e-6)

    def test_grid(self, disk_bump):
        family = ProjectionFamily(disk_bump)
        grid = family.evaluate_grid([0.5, 1.5], [0.1, Z])
        assert grid.shape == (2, 2)
        assert grid[1, 1] == pytest.approx(family.evaluate(1.5, Z))

    def test_unknown_method(self, disk_bump):
        with pytest.raises(DomainError):
            ProjectionFamily(disk_bump, method="series")


class TestInversion:
    def test_recovers_the_function(self, disk_gaussian):
        zs = [0.0, 0.3, -0.5 + 0.2j]
        values = inversion_disk(ProjectionFamily(disk_gaussian), zs, lambda_max=24.0, step=0.05)
        np.testing.assert_allclose(values, disk_gaussian(np.array(zs)), atol=1e-8)

    def test_scalar_point(self, disk_gaussian):
        value = inversion_disk(ProjectionFamily(disk_gaussian), 0.3, lambda_max=24.0, step=0.05)
        assert isinstance(value, complex)
        assert value == pytest.approx(complex(gauss4(math.atanh(0.3))), abs=1e-8)

    def test_plain_callable(self, disk_gaussian):
        family = ProjectionFamily(disk_gaussian)
        value = inversion_disk(lambda lam: family(lam), 0.2, lambda_max=24.0, step=0.1)
        assert value == pytest.approx(complex(gauss4(math.atanh(0.2))), abs=1e-7)

    def test_truncation_warning(self, disk_bump):
        with pytest.warns(TruncationWarning):
            inversion_disk(ProjectionFamily(disk_bump), 0.2, lambda_max=1.0, step=0.1)
