"""Tests for the group law, distance, inversion and Poisson kernel of NA."""
import math

import numpy as np
import pytest

from src.errors import DimensionMismatch, DomainError
from src.models.points import NAPoint
from src.na.group import (
    default_structure,
    geodesic_inversion,
    geodesic_rho,
    group_inv,
    group_mul,
    left_translation_jacobian,
    na_distance,
    random_points,
)
from src.na.poisson import poisson_kernel, poisson_power, translate


@pytest.fixture
def points():
    return random_points(np.random.default_rng(7), 2, 1, 6, spread=0.7)


class TestGroupLaw:
    def test_identity(self, points):
        e = NAPoint.identity(2, 1)
        for x in points:
            assert group_mul(e, x).allclose(x)
            assert group_mul(x, e).allclose(x)

    def test_inverse(self, points):
        e = NAPoint.identity(2, 1)
        for x in points:
            assert group_mul(x, group_inv(x)).allclose(e)
            assert group_mul(group_inv(x), x).allclose(e)

    def test_associativity(self, points):
        x, y, z = points[:3]
        assert group_mul(group_mul(x, y), z).allclose(group_mul(x, group_mul(y, z)))

    def test_not_abelian(self):
        x = NAPoint([1.0, 0.0], [0.0], 1.0)
        y = NAPoint([0.0, 1.0], [0.0], 1.0)
        assert not group_mul(x, y).allclose(group_mul(y, x))

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            default_structure(2, 2)
        with pytest.raises(DimensionMismatch):
            group_mul(NAPoint.identity(2, 1), NAPoint.identity(4, 1))

    def test_translation_jacobian(self, na_params):
        assert left_translation_jacobian(NAPoint([0, 0], [0], 2.0), na_params) == pytest.approx(8.0)


class TestDistance:
    def test_identity_is_at_zero(self):
        assert geodesic_rho(NAPoint.identity(2, 1)) == 0

    @pytest.mark.parametrize("a", [0.25, 3.0])
    def test_pure_dilation(self, a):
        assert geodesic_rho(NAPoint([0, 0], [0], a)) == pytest.approx(abs(math.log(a)), rel=1e-13)

    def test_symmetric(self, points):
        x, y = points[0], points[1]
        assert na_distance(x, y) == pytest.approx(na_distance(y, x), rel=1e-10)

    def test_left_invariant(self, points):
        g, x, y = points[:3]
        assert na_distance(group_mul(g, x), group_mul(g, y)) == pytest.approx(na_distance(x, y), rel=1e-10)

    def test_triangle_inequality(self, points):
        x, y, z = points[3:6]
        assert na_distance(x, z) <= na_distance(x, y) + na_distance(y, z) + 1e-12


class TestGeodesicInversion:
    def test_on_the_a_axis(self):
        assert geodesic_inversion(NAPoint([0, 0], [0], 4.0)).allclose(NAPoint([0, 0], [0], 0.25))

    def test_involution(self, points):
        for x in points:
            assert geodesic_inversion(geodesic_inversion(x)).allclose(x, atol=1e-10)

    def test_preserves_distance_from_identity(self, points):
        for x in points:
            assert geodesic_rho(geodesic_inversion(x)) == pytest.approx(geodesic_rho(x), rel=1e-10)


class TestPoissonKernel:
    def test_at_the_base_point(self, na_params):
        assert poisson_kernel(2.0, [0, 0], [0], na_params) == pytest.approx(2.0**-2)

    def test_positive_a_required(self, na_params):
        with pytest.raises(DomainError):
            poisson_kernel(0.0, [0, 0], [0], na_params)

    def test_translate_to_self(self):
        x = NAPoint([0.5, -1.0], [2.0], 1.5)
        V, Z = translate(x, (x.V, x.Z), default_structure(2, 1))
        np.testing.assert_allclose(V, 0)
        np.testing.assert_allclose(Z, 0)

    def test_power_modulus_for_real_lambda(self, na_params, points):
        nbar = (np.array([0.3, 0.1]), np.array([-0.2]))
        x = points[0]
        V, Z = translate(x, nbar, default_structure(2, 1))
        kernel = poisson_kernel(x.a, V, Z, na_params)
        assert abs(poisson_power(x, nbar, 2.5, na_params)) == pytest.approx(math.sqrt(kernel), rel=1e-12)

    def test_power_is_one_at_minus_i_half_q(self, na_params, points):
        nbar = (np.zeros(2), np.zeros(1))
        assert poisson_power(points[1], nbar, -1j * na_params.Q / 2, na_params) == pytest.approx(1.0)
