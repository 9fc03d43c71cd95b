import numpy as np
import pytest

from stokit import (DegenerateError, DomainError, GeometricBrownian,
                    PositivityError, SizeError, compare_models, fit_lognormal,
                    fit_normal, sample_gaussian, sample_stable, simulate,
                    substream, tail_index_hill)


class TestFitNormal:
    def test_hand_computed(self):
        fit = fit_normal([0.0, 2.0])
        assert fit.params["mu"] == pytest.approx(1.0)
        assert fit.params["sigma"] == pytest.approx(1.0)  # population 1/n variance
        assert fit.n == 2

    def test_degenerate_samples(self):
        with pytest.raises(DegenerateError):
            fit_normal([3.0, 3.0, 3.0])

    def test_too_few_samples(self):
        with pytest.raises(SizeError):
            fit_normal([1.0])

    def test_parameter_recovery(self):
        x = 3.0 + 0.5 * sample_gaussian(substream(2, 0), 10**5)
        fit = fit_normal(x)
        assert abs(fit.params["mu"] - 3.0) < 0.01
        assert abs(fit.params["sigma"] - 0.5) < 0.01

    def test_scale_equivariance(self):
        x = sample_gaussian(substream(4, 0), 500)
        base = fit_normal(x)
        moved = fit_normal(-2.0 * x + 3.0)
        assert moved.params["mu"] == pytest.approx(-2.0 * base.params["mu"] + 3.0,
                                                   abs=1e-12)
        assert moved.params["sigma"] == pytest.approx(2.0 * base.params["sigma"],
                                                      abs=1e-12)


class TestFitLognormal:
    def test_hand_computed(self):
        fit = fit_lognormal([1.0, np.exp(2.0)])
        assert fit.params["mu_log"] == pytest.approx(1.0)
        assert fit.params["sigma_log"] == pytest.approx(1.0)

    def test_rejects_nonpositive(self):
        with pytest.raises(PositivityError):
            fit_lognormal([1.0, 0.0, 2.0])

    def test_matches_normal_fit_on_logs(self):
        x = np.exp(sample_gaussian(substream(5, 0), 1000))
        log_fit = fit_normal(np.log(x))
        fit = fit_lognormal(x)
        assert fit.params["mu_log"] == log_fit.params["mu"]
        assert fit.params["sigma_log"] == log_fit.params["sigma"]
        jacobian = float(np.log(x).sum())
        assert fit.log_likelihood == pytest.approx(
            log_fit.log_likelihood - jacobian)

    def test_gbm_terminal_values(self):
        # terminal law of GBM(mu, sigma) at T=1: LogNormal(mu - sigma^2/2, sigma)
        ens = simulate(GeometricBrownian(0.05, 0.2), 1.0, 0.01, 10**5, 31)
        fit = fit_lognormal(ens.values[:, -1])
        assert abs(fit.params["mu_log"] - 0.03) < 0.01
        assert abs(fit.params["sigma_log"] - 0.2) < 0.01


class TestHill:
    def test_exact_pareto(self):
        # x = u^{-1/2} has survival x^{-2}: tail index 2
        u = substream(22, 0).uniforms(10**5)
        alpha = tail_index_hill(u ** -0.5, 1000)
        assert abs(alpha - 2.0) < 0.2

    def test_cauchy_tail(self):
        x = sample_stable(substream(15, 0), 1.0, 0.0, 10**5)
        alpha = tail_index_hill(np.abs(x), 1000)
        assert abs(alpha - 1.0) < 0.15

    def test_k_out_of_range(self):
        with pytest.raises(DomainError):
            tail_index_hill(np.arange(10.0), 10)
        with pytest.raises(DomainError):
            tail_index_hill(np.arange(10.0), 1)

    def test_scale_invariance(self):
        u = substream(23, 0).uniforms(2000)
        x = u ** -0.7
        assert tail_index_hill(37.5 * x, 100) == pytest.approx(
            tail_index_hill(x, 100), rel=1e-12)

    def test_degenerate_threshold(self):
        with pytest.raises(DegenerateError):
            tail_index_hill(np.zeros(100), 10)


class TestCompareModels:
    def test_lognormal_data_prefers_lognormal(self):
        x = np.exp(sample_gaussian(substream(16, 0), 10**4))
        ranking = compare_models(x, ["normal", "lognormal"])
        assert ranking[0].family == "lognormal"
        assert ranking[0].aic < ranking[1].aic

    def test_sign_mixed_data_filters_lognormal(self):
        x = sample_gaussian(substream(17, 0), 10**4)
        ranking = compare_models(x, ["normal", "lognormal"])
        assert [s.family for s in ranking] == ["normal"]

    def test_duplicate_candidates_keep_order(self):
        x = np.exp(sample_gaussian(substream(18, 0), 500))
        ranking = compare_models(x, ["lognormal", "lognormal"])
        assert len(ranking) == 2
        assert ranking[0] == ranking[1]

    def test_order_invariance(self):
        x = np.exp(sample_gaussian(substream(19, 0), 500))
        a = compare_models(x, ["normal", "lognormal"])
        b = compare_models(x, ["lognormal", "normal"])
        assert a == b

    def test_empty_and_unknown(self):
        with pytest.raises(SizeError):
            compare_models([1.0, 2.0], [])
        with pytest.raises(DomainError):
            compare_models([1.0, 2.0], ["cauchy"])

    def test_no_admissible_candidate(self):
        with pytest.raises(PositivityError):
            compare_models([-1.0, 1.0], ["lognormal"])
