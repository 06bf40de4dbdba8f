"""Tests for disk geometry and the finite-difference Laplace-Beltrami operator."""
import cmath
import math

import numpy as np
import pytest

from src.disk.geometry import (
    disk_distance,
    horocycle_bracket,
    measure_weight_cartesian,
    measure_weight_polar,
    mobius_from_origin,
    mobius_to_origin,
    poisson_power_disk,
    rotate,
    to_cartesian,
    to_polar,
)
from src.disk.laplacian import (
    POLAR_CROSSOVER,
    laplacian_disk_apply,
    laplacian_disk_cartesian,
    laplacian_disk_polar,
)
from src.errors import DomainError
from src.models.points import BoundaryPoint, DiskPoint


class TestGeometry:
    @pytest.mark.parametrize("r", [0.0, 0.3, 2.5])
    def test_distance_from_origin_is_geodesic_radius(self, r):
        assert disk_distance(0j, to_cartesian(r, 1.1)) == pytest.approx(r, abs=1e-13)

    def test_polar_round_trip(self):
        z = 0.4 - 0.35j
        r, theta = to_polar(z)
        assert to_cartesian(r, theta) == pytest.approx(z, abs=1e-15)
        assert 0 <= theta < 2 * math.pi

    def test_distance_is_symmetric(self):
        a, b = 0.2 + 0.5j, -0.6 + 0.1j
        assert disk_distance(a, b) == pytest.approx(disk_distance(b, a), rel=1e-14)

    def test_mobius_is_an_isometry(self):
        z0, a, b = 0.3 + 0.4j, -0.2 + 0.1j, 0.5 - 0.5j
        assert disk_distance(mobius_to_origin(z0, a), mobius_to_origin(z0, b)) == pytest.approx(
            disk_distance(a, b), rel=1e-12)
        assert mobius_from_origin(z0, mobius_to_origin(z0, a)) == pytest.approx(a, abs=1e-15)
        assert mobius_to_origin(z0, z0) == 0

    def test_rotation_is_an_isometry(self):
        a, b = 0.1 + 0.7j, -0.3 - 0.2j
        assert disk_distance(rotate(a, 0.8), rotate(b, 0.8)) == pytest.approx(disk_distance(a, b), rel=1e-13)

    def test_vectorized_distance(self):
        d = disk_distance(np.zeros(3, dtype=complex), np.tanh(np.array([0.1, 1.0, 2.0])))
        np.testing.assert_allclose(d, [0.1, 1.0, 2.0], rtol=1e-13)

    def test_outside_the_disk(self):
        with pytest.raises(DomainError):
            disk_distance(0j, 1.0 + 0j)
        with pytest.raises(DomainError):
            disk_distance(0j, np.array([0.5, 1.2]))

    def test_bracket_at_origin_vanishes(self):
        assert horocycle_bracket(0j, BoundaryPoint(0.7)) == 0

    def test_bracket_along_the_radius(self):
        """<tanh(r) w, w> = r."""
        w = cmath.exp(0.4j)
        assert horocycle_bracket(math.tanh(1.3) * w, w) == pytest.approx(1.3, rel=1e-13)

    def test_bracket_accepts_disk_points(self):
        point = DiskPoint.from_polar(0.5, 0.0)
        assert horocycle_bracket(point, 1.0) == pytest.approx(0.5)

    def test_poisson_power_is_one_at_minus_i(self):
        assert poisson_power_disk(0.3 + 0.1j, 1.0, 1j) == pytest.approx(1.0)

    def test_measure_weights(self):
        assert measure_weight_cartesian(0.5) == pytest.approx(1 / 0.75**2)
        assert measure_weight_polar(0.5) == pytest.approx(0.5 * math.sinh(1.0))


class TestLaplacian:
    @pytest.mark.parametrize("z", [0.3 + 0.2j, -0.5j, 0.02])
    def test_poisson_power_is_an_eigenfunction(self, z):
        lam = 2.0

        def field(u: complex) -> complex:
            return poisson_power_disk(u, 1.0, lam)

        expected = -(lam**2 + 1) * field(z)
        assert laplacian_disk_apply(field, z, 1e-3) == pytest.approx(expected, rel=1e-5)

    def test_forms_agree(self):
        z = 0.3 + 0.4j

        def field(u: complex) -> complex:
            return abs(u) ** 2 + u.real

        r, theta = to_polar(z)
        cartesian = laplacian_disk_cartesian(field, z, 1e-3)
        polar = laplacian_disk_polar(field, r, theta, 1e-3)
        assert polar == pytest.approx(cartesian, rel=1e-5)

    def test_auto_switches_to_cartesian_near_origin(self, mocker):
        spy = mocker.patch("src.disk.laplacian.laplacian_disk_cartesian", return_value=0j)
        laplacian_disk_apply(abs, math.tanh(POLAR_CROSSOVER / 2), 1e-3)
        spy.assert_called_once()

    def test_polar_stencil_cannot_cross_origin(self):
        with pytest.raises(DomainError):
            laplacian_disk_polar(abs, 1e-3, 0.0, 1e-3)

    def test_unknown_form(self):
        with pytest.raises(DomainError):
            laplacian_disk_apply(abs, 0.5, 1e-3, form="spherical")
