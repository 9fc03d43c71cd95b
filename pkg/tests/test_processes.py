import math

import numpy as np
import pytest

from stokit import (AdaptiveOU, Brownian, DomainError, GeometricBrownian,
                    GeometricLevy, LevyStable, OrnsteinUhlenbeck, Poisson,
                    SizeError, StabilityError, TimeGrid, additive_step,
                    adaptive_theta_update, multiplicative_log_step, ou_step,
                    sample_gaussian, simulate, substream)


class TestSpecs:
    def test_brownian_defaults_match_reference_api(self):
        spec = Brownian()
        assert spec.drift == 0.0 and spec.scale == 1.0 and spec.x0 == 0.0

    def test_invalid_parameters_rejected(self):
        with pytest.raises(DomainError):
            GeometricBrownian(mu=0.05, sigma=-0.1)
        with pytest.raises(DomainError):
            GeometricBrownian(mu=0.05, sigma=0.2, x0=0.0)
        with pytest.raises(DomainError):
            LevyStable(alpha=2.5, beta=0.0, scale=1.0)
        with pytest.raises(DomainError):
            GeometricLevy(alpha=1.5, beta=0.0, scale=0.0)
        with pytest.raises(DomainError):
            OrnsteinUhlenbeck(theta=0.0, mean=0.0, scale=1.0, x0=0.0)
        with pytest.raises(DomainError):
            AdaptiveOU(theta0=5.0, mean=0.0, scale=1.0, x0=0.0, theta_max=2.0)
        with pytest.raises(DomainError):
            Poisson(rate=-1.0)

    def test_grid_rounding(self):
        grid = TimeGrid.from_horizon(3.0, 0.01)
        assert grid.n_steps == 300
        assert grid.times[0] == 0.0
        assert len(grid.times) == 301
        with pytest.raises(SizeError):
            TimeGrid.from_horizon(0.005, 0.01)


class TestSteps:
    def test_additive_unit_step(self):
        assert additive_step(0.0, 0.0, 1.0, 1.0, 1.5) == 1.5

    def test_additive_pure_drift(self):
        assert additive_step(2.0, 3.0, 0.0, 0.5, 123.0) == 3.5

    def test_additive_variance_accumulates(self):
        # Composing steps must reproduce Brownian terminal variance scale^2*T.
        rows, n, dt, scale = 10**4, 100, 0.01, 1.2
        terminal = np.empty(rows)
        for i in range(rows):
            z = sample_gaussian(substream(13, i), n)
            x = 0.0
            for k in range(n):
                x = additive_step(x, 0.0, scale, dt, z[k])
            terminal[i] = x
        target = scale**2 * n * dt
        assert abs(terminal.var() / target - 1.0) < 0.05

    def test_multiplicative_identity(self):
        assert multiplicative_log_step(1.0, 0.0, 0.0, 2.0, 0.37, 9.9) == 1.0

    def test_multiplicative_pure_drift(self):
        got = multiplicative_log_step(2.0, 0.1, 0.0, 2.0, 1.0, 5.0)
        assert got == pytest.approx(2.0 * math.exp(0.1), rel=1e-15)

    def test_multiplicative_rejects_nonpositive_state(self):
        with pytest.raises(DomainError):
            multiplicative_log_step(0.0, 0.1, 0.2, 2.0, 0.01, 0.0)

    def test_ou_fixed_point(self):
        assert ou_step(0.7, 0.5, 0.7, 0.0, 0.1, 3.0) == 0.7

    def test_ou_direct_value(self):
        assert ou_step(1.0, 0.5, 0.0, 0.0, 0.1, 0.0) == pytest.approx(0.95)

    def test_ou_stability_guard(self):
        with pytest.raises(StabilityError):
            ou_step(1.0, 20.0, 0.0, 1.0, 0.1, 0.0)

    def test_adaptive_theta_zero_gain(self):
        assert adaptive_theta_update(1.3, 99.0, 0.0, 0.0, 0.0, 0.01, 50.0, 0.1) == 1.3

    def test_adaptive_theta_direct_value(self):
        got = adaptive_theta_update(1.0, 3.0, 0.0, 0.5, 1.0, 0.01, 10.0, 0.1)
        assert got == pytest.approx(1.1)

    def test_adaptive_theta_clips(self):
        got = adaptive_theta_update(10.0, 100.0, 0.0, 5.0, 0.0, 0.01, 10.0, 0.1)
        assert got == 10.0


class TestSimulate:
    def test_reference_shapes(self):
        ens = simulate(Brownian(0.0, 1.0), 3.0, 0.01, 240, 7)
        assert ens.values.shape == (240, 301)
        ens = simulate(GeometricLevy(1.55, 0.2, 0.35, 0.02), 4.0, 0.01, 360, 7)
        assert ens.values.shape == (360, 401)
        assert np.all(ens.values > 0.0)

    def test_noiseless_drift_line(self):
        ens = simulate(Brownian(drift=0.5, scale=0.0), 2.0, 0.1, 3, 0)
        expected = 0.5 * ens.grid.times
        for row in ens.values:
            np.testing.assert_allclose(row, expected, rtol=0.0, atol=1e-15)

    def test_initial_values_match_x0(self):
        for spec in (Brownian(x0=-2.0), GeometricBrownian(0.05, 0.2, x0=3.0),
                     LevyStable(1.5, 0.0, 1.0, x0=1.25),
                     OrnsteinUhlenbeck(1.0, 0.0, 1.0, x0=0.5),
                     Poisson(rate=2.0, x0=4.0)):
            ens = simulate(spec, 1.0, 0.1, 5, 11)
            assert np.all(ens.values[:, 0] == spec.x0)

    def test_gbm_terminal_mean(self):
        ens = simulate(GeometricBrownian(0.05, 0.2), 1.0, 0.01, 10**5, 21)
        target = math.exp(0.05)
        assert abs(ens.values[:, -1].mean() / target - 1.0) < 0.01

    def test_brownian_variance_scales_with_horizon(self):
        v = {}
        for horizon in (1.0, 2.0):
            ens = simulate(Brownian(0.0, 1.5), horizon, 0.01, 10**4, 3)
            v[horizon] = ens.values[:, -1].var()
        assert abs(v[2.0] / v[1.0] - 2.0) < 0.2
        assert abs(v[1.0] / 1.5**2 - 1.0) < 0.1

    def test_ou_stationary_variance(self):
        # Pool 10 chains at T=200; oracle scale^2/(2*theta) = 0.5.
        ens = simulate(OrnsteinUhlenbeck(1.0, 0.0, 1.0, 0.0), 200.0, 0.01, 10, 5)
        sampled = ens.values[:, 2000:].var()
        assert abs(sampled / 0.5 - 1.0) < 0.1

    def test_adaptive_zero_gain_matches_fixed_rate(self):
        adaptive = simulate(AdaptiveOU(theta0=0.7, mean=0.3, scale=0.4, x0=1.0,
                                       eta=0.0), 100.0, 0.01, 3, 77)
        fixed = simulate(OrnsteinUhlenbeck(theta=0.7, mean=0.3, scale=0.4,
                                           x0=1.0), 100.0, 0.01, 3, 77)
        np.testing.assert_array_equal(adaptive.values, fixed.values)

    def test_adaptive_theta_stays_in_bounds(self):
        ens = simulate(AdaptiveOU(theta0=1.0, mean=0.0, scale=0.5, x0=2.0,
                                  eta=2.0, band=0.5, theta_min=0.1,
                                  theta_max=10.0), 10.0, 0.01, 4, 13)
        assert ens.theta_paths is not None
        assert np.all(ens.theta_paths >= 0.1)
        assert np.all(ens.theta_paths <= 10.0)

    def test_poisson_paths_step_by_jump(self):
        ens = simulate(Poisson(rate=3.0, jump=0.5, x0=1.0), 10.0, 0.01, 20, 23)
        steps = np.diff(ens.values, axis=1)
        assert np.all(np.isin(np.round(steps / 0.5), [0, 1, 2]))
        assert np.all(np.diff(ens.values, axis=1) >= 0.0)

    def test_schedule_independence(self):
        spec = GeometricLevy(1.55, 0.2, 0.35, 0.02)
        serial = simulate(spec, 2.0, 0.01, 64, 9, workers=1)
        threaded = simulate(spec, 2.0, 0.01, 64, 9, workers=4)
        np.testing.assert_array_equal(serial.values, threaded.values)

    def test_instance_streams_are_stable_under_count(self):
        # Instance i depends only on substream(seed, i), not on ensemble size.
        small = simulate(Brownian(0.1, 1.0), 1.0, 0.1, 3, 31)
        large = simulate(Brownian(0.1, 1.0), 1.0, 0.1, 8, 31)
        np.testing.assert_array_equal(small.values, large.values[:3])

    def test_size_errors(self):
        with pytest.raises(SizeError):
            simulate(Brownian(), 1.0, 0.1, 0, 1)
        with pytest.raises(SizeError):
            simulate(Brownian(), 0.01, 0.1, 5, 1)

    def test_ensemble_values_read_only(self):
        ens = simulate(Brownian(), 1.0, 0.1, 2, 1)
        with pytest.raises(ValueError):
            ens.values[0, 0] = 99.0
