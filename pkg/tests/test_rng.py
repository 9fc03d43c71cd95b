import numpy as np
import pytest
from scipy import stats

from stokit import (DomainError, sample_gaussian, sample_poisson_events,
                    sample_stable, substream)


def test_substream_is_pure():
    a = sample_gaussian(substream(42, 0), 100)
    b = sample_gaussian(substream(42, 0), 100)
    np.testing.assert_array_equal(a, b)


def test_distinct_streams_differ():
    a = sample_gaussian(substream(42, 0), 1000)
    b = sample_gaussian(substream(42, 1), 1000)
    assert np.any(a != b)


def test_replay_after_recreation():
    s = substream(42, 7)
    first = sample_gaussian(s, 10)
    again = sample_gaussian(substream(42, 7), 10)
    np.testing.assert_array_equal(first, again)


def test_batching_invariance():
    s = substream(9, 3)
    whole = sample_gaussian(s, 10)
    s2 = substream(9, 3)
    split = np.concatenate([sample_gaussian(s2, 4), sample_gaussian(s2, 6)])
    np.testing.assert_array_equal(whole, split)


def test_uniforms_open_interval():
    u = substream(7, 0).uniforms(10**5)
    assert u.min() > 0.0 and u.max() < 1.0


def test_gaussian_empty():
    assert sample_gaussian(substream(1, 0), 0).size == 0


def test_gaussian_moments():
    z = sample_gaussian(substream(1, 0), 10**5)
    assert abs(z.mean()) < 0.02
    assert abs(z.var() - 1.0) < 0.03


def test_gaussian_moment_sweep():
    # CLT bounds 4/sqrt(n) and 6/sqrt(n) must hold for >= 95 of 100 seeds.
    n = 10**4
    fails = 0
    for seed in range(100):
        z = sample_gaussian(substream(seed, 0), n)
        if abs(z.mean()) >= 4.0 / np.sqrt(n) or abs(z.var() - 1.0) >= 6.0 / np.sqrt(n):
            fails += 1
    assert fails <= 5


def test_stable_gaussian_reduction():
    x = sample_stable(substream(1, 0), 2.0, 0.0, 10**5)
    ks = stats.kstest(x, "norm", args=(0.0, np.sqrt(2.0))).statistic
    assert ks < 0.02


def test_stable_cauchy_case():
    x = sample_stable(substream(1, 0), 1.0, 0.0, 10**5)
    q25, q50, q75 = np.quantile(x, [0.25, 0.5, 0.75])
    # standard Cauchy quantiles tan(pi*(p - 1/2)): median 0, IQR 2
    assert abs(q50) < 0.02
    assert abs((q75 - q25) - 2.0) < 0.05


def test_stable_skewed_is_finite():
    x = sample_stable(substream(3, 1), 1.55, 0.2, 10**5)
    assert np.all(np.isfinite(x))


def test_stable_rejects_bad_params():
    with pytest.raises(DomainError):
        sample_stable(substream(1, 0), 2.5, 0.0, 10)
    with pytest.raises(DomainError):
        sample_stable(substream(1, 0), 0.0, 0.0, 10)
    with pytest.raises(DomainError):
        sample_stable(substream(1, 0), 1.5, 1.5, 10)


def test_stable_deterministic():
    a = sample_stable(substream(5, 2), 1.7, -0.3, 1000)
    b = sample_stable(substream(5, 2), 1.7, -0.3, 1000)
    np.testing.assert_array_equal(a, b)


def test_poisson_zero_rate():
    assert sample_poisson_events(substream(1, 0), 0.0, 10.0).size == 0


def test_poisson_times_sorted_and_bounded():
    t = sample_poisson_events(substream(4, 0), 5.0, 20.0)
    assert np.all(np.diff(t) > 0)
    assert t.size == 0 or (t[0] > 0.0 and t[-1] <= 20.0)


def test_poisson_mean_count():
    counts = np.array([
        sample_poisson_events(substream(seed, 0), 3.0, 100.0).size
        for seed in range(200)
    ])
    assert abs(counts.mean() - 300.0) < 1.5
    assert abs(counts.var(ddof=1) - 300.0) < 0.15 * 300.0


def test_poisson_rejects_bad_params():
    with pytest.raises(DomainError):
        sample_poisson_events(substream(1, 0), -1.0, 10.0)
    with pytest.raises(DomainError):
        sample_poisson_events(substream(1, 0), 1.0, 0.0)


def test_poisson_consumption_replays():
    s = substream(11, 0)
    first = sample_poisson_events(s, 2.0, 50.0)
    after = sample_gaussian(s, 5)
    s2 = substream(11, 0)
    np.testing.assert_array_equal(first, sample_poisson_events(s2, 2.0, 50.0))
    np.testing.assert_array_equal(after, sample_gaussian(s2, 5))


def test_seed_out_of_range():
    with pytest.raises(DomainError):
        substream(-1, 0)
    with pytest.raises(DomainError):
        substream(2**64, 0)
