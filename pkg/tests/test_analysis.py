"""Convergence-factor formulas, asymptotic limits and sweep tooling."""

import numpy as np
import pytest

from swr_airsea import (DegenerateFrequencyError, XiQuery, omega_plus_f_sweep,
                        sup_xi, sweep_xi, theta_opt_linear,
                        theta_opt_quadratic, xi0_linear, xi0_quadratic,
                        xi_dnwr, xi_linear, xi_linear_values)

EPS = 1e-3
NU_A, NU_O = 1.0, 3e-3
F = 1e-4
# eps * sqrt(nu_a / nu_o), cross-checked with 40-digit arithmetic
XI0_REF = 0.018257418583505537
ALPHA_C = 0.0075798008143262595  # c_d |interface jump| of the stationary state


def query(params5, grid5, theta, omega, alpha_c=ALPHA_C):
    return XiQuery(params=params5, grid=grid5, theta=theta,
                   alpha_c=alpha_c, omega=omega)


class TestXi0:
    def test_reference_values(self):
        assert xi0_linear(1.0, EPS, NU_A, NU_O) == pytest.approx(XI0_REF, rel=1e-14)
        assert xi0_quadratic(1.0, EPS, NU_A, NU_O) == pytest.approx(
            0.5273861278752583, rel=1e-14)

    def test_trivial_cases(self):
        assert xi0_linear(1.0, 0.0, NU_A, NU_O) == 0.0
        assert xi0_linear(2.0, 0.0, NU_A, NU_O) == 0.5
        assert xi0_quadratic(1.5, 0.0, NU_A, NU_O) == 0.0
        assert xi0_quadratic(1.5, EPS, NU_A, NU_O) == pytest.approx(
            XI0_REF, rel=1e-12)

    def test_theta_zero_is_a_domain_error(self):
        with pytest.raises(ZeroDivisionError):
            xi0_linear(0.0, EPS, NU_A, NU_O)
        with pytest.raises(ZeroDivisionError):
            xi0_quadratic(0.0, EPS, NU_A, NU_O)


class TestThetaOpt:
    def test_values(self):
        assert theta_opt_linear(EPS, NU_A, NU_O) == pytest.approx(
            1.0182574185835056, rel=1e-14)
        assert theta_opt_quadratic(EPS, NU_A, NU_O) == pytest.approx(
            1.5273861278752583, rel=1e-14)
        assert theta_opt_linear(0.0, NU_A, NU_O) == 1.0
        assert theta_opt_quadratic(0.0, NU_A, NU_O) == 1.5

    def test_asymptote_vanishes_at_the_optimum(self):
        assert xi0_linear(theta_opt_linear(EPS, NU_A, NU_O),
                          EPS, NU_A, NU_O) <= 1e-15
        assert xi0_quadratic(theta_opt_quadratic(EPS, NU_A, NU_O),
                             EPS, NU_A, NU_O) <= 1e-15


class TestXiLinear:
    @pytest.mark.parametrize("theta", [0.5, 1.0, 1.5])
    def test_low_frequency_limit(self, params5, grid5, theta):
        # reconstructing omega + f = 1e-12 from omega loses a few ulps,
        # so evaluate with the floor knob one decade down
        value = xi_linear(query(params5, grid5, theta, 1e-12 - F), floor=1e-13)
        limit = xi0_linear(theta, EPS, NU_A, NU_O)
        assert value == pytest.approx(limit, rel=1e-3)

    def test_theta_zero_grows_without_bound(self, params5, grid5):
        values = [xi_linear(query(params5, grid5, 0.0, wpf - F))
                  for wpf in (1e-4, 1e-6, 1e-8)]
        assert values[0] < values[1] < values[2]
        assert values[2] > 10.0

    @pytest.mark.parametrize("theta", [0.5, 1.0, 1.5])
    def test_high_frequency_decay(self, params5, grid5, theta):
        assert xi_linear(query(params5, grid5, theta, 1e6 - F)) <= 1e-2

    def test_monotone_decay_over_last_sweep_decade(self, params5, grid5):
        wpf = omega_plus_f_sweep()
        last = wpf[wpf >= 10.0]
        values = xi_linear_values(params5, grid5, 1.0, ALPHA_C, last - F)
        assert np.all(np.diff(values) < 0)

    @pytest.mark.parametrize("theta", [0.25, 0.5, 0.75, 1.0])
    def test_low_frequency_limit_is_an_upper_bound(self, params5, grid5, theta):
        # holds because sqrt(nu_o/nu_a) = 0.0548 <= h_o/h_a = 0.1 here
        wpf = omega_plus_f_sweep()
        values = xi_linear_values(params5, grid5, theta, ALPHA_C, wpf - F)
        assert values.max() <= xi0_linear(theta, EPS, NU_A, NU_O) * (1 + 1e-6)

    def test_degenerate_frequency_raises(self, params5, grid5):
        with pytest.raises(DegenerateFrequencyError):
            xi_linear(query(params5, grid5, 1.0, -F + 1e-13))

    def test_alpha_c_must_be_positive(self, params5, grid5):
        with pytest.raises(ValueError):
            query(params5, grid5, 1.0, 1e-3, alpha_c=0.0)


class TestXiDnwr:
    def test_theta_zero_is_one(self, params5, grid5):
        for omega in (1e-6, 1e-2, 10.0):
            assert xi_dnwr(omega, 0.0, params5, grid5) == 1.0

    def test_low_frequency_limits(self, params5, grid5):
        # lambda_o/lambda_a -> (h_o/h_a) sqrt(nu_a/nu_o), so the factor
        # tends to |1 - theta (1 - eps sqrt(nu_a/nu_o))|
        assert xi_dnwr(1e-12 - F, 1.0, params5, grid5,
                       floor=1e-13) == pytest.approx(XI0_REF, rel=1e-3)
        assert xi_dnwr(1e-12 - F, 2.0, params5, grid5,
                       floor=1e-13) == pytest.approx(0.9634851628329889,
                                                     rel=1e-3)

    def test_differs_from_bulk_factor(self, params5, grid5):
        # the relaxation acts on a different variable: at theta = 0.5 the
        # two factors disagree strongly at low frequency
        omega = 1e-10 - F
        bulk = xi_linear(query(params5, grid5, 0.5, omega))
        dnwr = xi_dnwr(omega, 0.5, params5, grid5)
        assert abs(bulk - dnwr) > 0.1


class TestSweep:
    def test_sup_location_at_theta_one(self, params5, grid5):
        wpf = omega_plus_f_sweep()
        sup, argmax = sup_xi(params5, grid5, 1.0, ALPHA_C, wpf - F)
        assert sup == pytest.approx(XI0_REF, rel=0.05)
        assert argmax == wpf[0] - F

    def test_sup_single_point_grid(self, params5, grid5):
        omega = 1e-3
        sup, argmax = sup_xi(params5, grid5, 1.0, ALPHA_C, [omega])
        assert argmax == omega
        assert sup == xi_linear(query(params5, grid5, 1.0, omega))

    def test_sup_beyond_asymptote_is_reported(self, params5, grid5):
        # at theta = 1.5 the sweep may exceed the quadratic asymptote;
        # both values are reported, no bound is claimed
        wpf = omega_plus_f_sweep()
        sup, _ = sup_xi(params5, grid5, 1.5, ALPHA_C, wpf - F)
        assert sup > 0.0
        assert np.isfinite(sup)

    def test_sweep_rows(self, params5, grid5):
        rows, skipped = sweep_xi(params5, grid5, 1.0, ALPHA_C,
                                 [1e-15, 1e-6, 1e-2, 1.0], dt=60.0)
        assert skipped == 1
        assert len(rows) == 3
        for row in rows:
            assert row.xi0_linear == pytest.approx(XI0_REF, rel=1e-14)
            assert row.xi_linear >= 0 and row.xi_dnwr >= 0
        # pi/dt = 0.052 s^-1: only the omega ~ 1 row is beyond Nyquist
        assert [r.beyond_nyquist for r in rows] == [False, False, True]

    def test_empty_grid_rejected(self, params5, grid5):
        with pytest.raises(ValueError):
            sup_xi(params5, grid5, 1.0, ALPHA_C, [])
