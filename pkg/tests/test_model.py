"""Spectral primitives: the frequency symbol chi and the decaying-mode
root of the characteristic equation r^2 - (2 + chi) r + 1 = 0."""

from fractions import Fraction

import numpy as np
import pytest

from swr_airsea import (GridSpec, PhysicalParams, TimeSpec, chi, lambda_root,
                        mode_ratio, spectral_point)


def small_root_oracle(c):
    """Independent quadratic-formula solve of r^2 - (2+c) r + 1 = 0,
    picking the root with |r| <= 1."""
    roots = np.roots([1.0, -(2.0 + c), 1.0])
    return roots[np.argmin(np.abs(roots))]


def char_residual(c, r):
    res = r * r - (2.0 + c) * r + 1.0
    scale = max(abs(r * r), abs((2.0 + c) * r), 1.0)
    return abs(res) / scale


class TestChi:
    def test_reference_cell_value(self):
        # h_a/2 = 10 m, nu_a = 1, f = 1e-4 of the reference setup
        value = chi(0.0, 20.0, 1.0, 1e-4)
        assert value.real == 0.0
        assert value.imag == pytest.approx(0.04, rel=1e-15)

    def test_degenerate_frequency_gives_zero(self):
        assert chi(-1e-4, 20.0, 1.0, 1e-4) == 0.0
        assert chi(-2.5, 1.0, 5.0, 2.5) == 0.0

    def test_against_exact_rational_arithmetic(self):
        # (1e-3 + 1e-4) * 2^2 / 3e-3, evaluated in exact rationals on the
        # binary64 inputs
        value = chi(1e-3, 2.0, 3e-3, 1e-4)
        exact = (Fraction(1e-3) + Fraction(1e-4)) * 4 / Fraction(3e-3)
        assert value.real == 0.0
        assert value.imag == pytest.approx(float(exact), rel=1e-15)
        assert value.imag == pytest.approx(1.4666666666666666, rel=1e-12)

    def test_purely_imaginary_for_real_frequencies(self):
        omegas = np.logspace(-8, 3, 50) - 1e-4
        values = chi(omegas, 2.0, 3e-3, 1e-4)
        assert np.all(values.real == 0.0)

    def test_rejects_bad_geometry(self):
        with pytest.raises(ValueError):
            chi(0.0, -1.0, 1.0, 1e-4)
        with pytest.raises(ValueError):
            chi(0.0, 1.0, 0.0, 1e-4)


class TestModeRatio:
    def test_zero_chi(self):
        assert lambda_root(0.0) == 0.0
        assert mode_ratio(0.0) == 1.0

    @pytest.mark.parametrize("c", [0.04j, 1.4666666666666666j])
    def test_matches_quadratic_formula_oracle(self, c):
        r = mode_ratio(c)
        expected = small_root_oracle(c)
        assert abs(r - expected) <= 1e-12 * abs(expected)
        assert abs(r) < 1.0
        assert char_residual(c, r) <= 1e-12

    def test_characteristic_equation_over_frequency_sweep(self):
        rng = np.random.default_rng(7)
        wpf = 10.0 ** rng.uniform(-10, 4, 1000)
        for h, nu in ((20.0, 1.0), (2.0, 3e-3)):
            c = 1j * wpf * h * h / nu
            r = mode_ratio(c)
            assert np.all(np.abs(r) < 1.0)
            res = r * r - (2.0 + c) * r + 1.0
            scale = np.maximum(np.abs(r * r),
                               np.maximum(np.abs((2.0 + c) * r), 1.0))
            assert np.max(np.abs(res) / scale) <= 1e-12
            # the cofactor root 1/r lies outside the unit circle
            assert np.all(np.abs(1.0 / r) > 1.0)

    def test_negative_frequencies_conjugate_branch(self):
        c = -0.7j
        r = mode_ratio(c)
        assert abs(r) < 1.0
        assert r == pytest.approx(np.conj(mode_ratio(0.7j)), rel=1e-14)

    def test_small_chi_asymptotics(self):
        # lambda ~ -sqrt(chi) underlies the low-frequency limit
        c = 1e-8 * 1j
        lam = lambda_root(c)
        assert abs(lam / (-np.sqrt(c)) - 1.0) <= 1e-3


class TestTypes:
    def test_physical_params_validation(self):
        with pytest.raises(ValueError):
            PhysicalParams.geostrophic(1e-4, -1.0, 3e-3, 1.0, 1000.0,
                                       1.2e-3, 10.0, 0.1)

    def test_geostrophic_forcing_identity(self, params5):
        assert params5.g_a == 1j * params5.f * params5.u_inf_a
        assert params5.g_o == 1j * params5.f * params5.u_inf_o
        assert params5.epsilon == pytest.approx(1e-3, rel=1e-15)

    def test_grid_layout(self, grid5):
        za = grid5.cell_centers("atmosphere")
        zo = grid5.cell_centers("ocean")
        assert za[0] == grid5.h_a / 2
        assert zo[0] == -grid5.h_o / 2
        assert za.shape == (100,) and zo.shape == (1000,)
        assert grid5.extent_a == 2000.0 and grid5.extent_o == -2000.0

    def test_grid_needs_two_cells(self):
        with pytest.raises(ValueError):
            GridSpec(h_a=20.0, h_o=2.0, n_a=1, n_o=10)

    def test_time_spec(self):
        t = TimeSpec(dt=60.0, n_t=1440)
        assert t.t_final == 86400.0
        with pytest.raises(ValueError):
            TimeSpec(dt=0.0, n_t=10)

    def test_spectral_point_invariants(self, params5, grid5):
        for omega in (1e-6, 1e-2, 5.0):
            pt = spectral_point(params5, grid5, omega)
            assert pt.chi_a == chi(omega, grid5.h_a, params5.nu_a, params5.f)
            assert pt.chi_o == chi(omega, grid5.h_o, params5.nu_o, params5.f)
            for c, r in ((pt.chi_a, pt.r_a), (pt.chi_o, pt.r_o)):
                assert char_residual(c, r) <= 1e-12
                assert abs(r) <= 1.0
            assert pt.lambda_a == pt.r_a - 1.0
