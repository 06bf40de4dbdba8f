"""Tests for spherical and generalized spherical functions of the disk."""
import math

import numpy as np
import pytest

from src.errors import DomainError, PoleError
from src.spectral.spherical import (
    density_factor,
    generalized_spherical,
    generalized_spherical_table,
    mode_prefactor,
    phi_disk_table,
    product_formula_disk,
    spherical_phi_disk,
)
from src.specfun.legendre import legendre_p


class TestDensityFactor:
    def test_real_values(self):
        lam = 1.3
        assert density_factor(lam) == pytest.approx(0.5 * lam * math.tanh(math.pi * lam / 2))

    def test_double_zero_at_origin(self):
        assert density_factor(0) == 0

    @pytest.mark.parametrize("lam", [1j, -3j, 5j])
    def test_poles(self, lam):
        with pytest.raises(PoleError):
            density_factor(lam)


class TestSphericalPhi:
    @pytest.mark.parametrize("lam, r", [(0.5, 0.2), (2.0, 0.5), (4.0 + 0.5j, 1.1)])
    def test_legendre_and_circle_forms_agree(self, lam, r):
        legendre = spherical_phi_disk(lam, r)
        circle = spherical_phi_disk(lam, r, form="circle")
        assert circle == pytest.approx(legendre, rel=1e-10, abs=1e-14)

    def test_value_at_origin_is_the_density(self):
        assert spherical_phi_disk(2.5, 0.0) == pytest.approx(density_factor(2.5))

    def test_table_omits_the_density(self):
        table = phi_disk_table([1.5, -1.5], [0.0, 0.7])
        assert table[0, 0] == 1
        assert table[0, 1] == pytest.approx(legendre_p(-(1 + 1.5j) / 2, math.cosh(1.4)), abs=1e-11)
        assert np.array_equal(table[0], table[1])

    def test_invalid_arguments(self):
        with pytest.raises(DomainError):
            spherical_phi_disk(1.0, -0.1)
        with pytest.raises(DomainError):
            spherical_phi_disk(1.0, 0.5, form="series")


class TestGeneralizedSpherical:
    @pytest.mark.parametrize("k", [0, 1, -2, 3])
    def test_closed_form_matches_circle_mean(self, k):
        lam, r = 1.5 + 0.25j, 0.6
        closed = generalized_spherical(lam, k, r)
        circle = generalized_spherical(lam, k, r, form="circle")
        assert closed == pytest.approx(circle, rel=1e-10)

    def test_depends_on_absolute_mode(self):
        assert generalized_spherical(2.0, -3, 0.4) == generalized_spherical(2.0, 3, 0.4)

    @pytest.mark.parametrize("k", [0, 1, 4])
    def test_at_origin(self, k):
        assert generalized_spherical(3.0, k, 0.0) == (1 if k == 0 else 0)

    def test_mode_prefactor(self):
        lam = 2.0
        s = (1 + 2j) / 2
        assert mode_prefactor(lam, 0) == 1
        assert mode_prefactor(lam, -2) == pytest.approx(s * (s + 1) / 2)

    def test_table_matches_scalar(self):
        lams, rs = [0.5, 3.0 - 0.5j], [0.1, 0.9]
        table = generalized_spherical_table(lams, 2, rs)
        for i, lam in enumerate(lams):
            for j, r in enumerate(rs):
                assert table[i, j] == pytest.approx(generalized_spherical(lam, 2, r), rel=1e-10)

    def test_unknown_form(self):
        with pytest.raises(DomainError):
            generalized_spherical(1.0, 1, 0.5, form="series")


@pytest.mark.parametrize("lam", [0.0, 1.5, 4.0])
def test_product_formula(lam):
    lhs, rhs = product_formula_disk(lam, 0.2, -0.3 + 0.1j)
    assert lhs == pytest.approx(rhs, rel=1e-10)
