import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mixentropy import (
    ClusterPartition,
    DurationDistribution,
    detect_clusters,
    duration_distribution,
    entropy_curve,
    fit_entropy_model,
    fit_power_law,
)
from mixentropy.entropy import default_power_law_range
from mixentropy.errors import EmptyPartition, InsufficientSupport


def partition_from(durations):
    crossings = np.concatenate([[10], 10 + np.cumsum(durations)])
    return ClusterPartition(window_n=8, durations=durations, crossing_indices=crossings)


def dist_from(support, probabilities, window_n=100, total=10 ** 6):
    counts = np.maximum(1, np.round(np.asarray(probabilities) * total)).astype(int)
    return DurationDistribution(window_n, np.asarray(support), counts,
                                counts / counts.sum())


# --- distribution -------------------------------------------------------

def test_single_class():
    d = duration_distribution(partition_from([1, 1, 1]))
    np.testing.assert_array_equal(d.support, [1])
    np.testing.assert_array_equal(d.probabilities, [1.0])


def test_counting():
    d = duration_distribution(partition_from([1, 2, 2, 5]))
    np.testing.assert_array_equal(d.support, [1, 2, 5])
    np.testing.assert_array_equal(d.counts, [1, 2, 1])
    np.testing.assert_allclose(d.probabilities, [0.25, 0.5, 0.25])


def test_empty_partition():
    part = ClusterPartition(5, durations=[], crossing_indices=[3])
    with pytest.raises(EmptyPartition):
        duration_distribution(part)


@given(st.lists(st.integers(1, 30), min_size=1, max_size=400))
@settings(max_examples=100, deadline=None)
def test_normalization_and_counts(durations):
    d = duration_distribution(partition_from(durations))
    assert abs(d.probabilities.sum() - 1.0) <= 1e-12
    assert d.total_count == len(durations)
    np.testing.assert_array_equal(np.sort(d.support), d.support)
    np.testing.assert_allclose(d.probabilities, d.counts / len(durations), rtol=0)


def test_no_binning_every_class_exact():
    durations = [1, 1, 4, 9, 9, 9, 27]
    d = duration_distribution(partition_from(durations))
    np.testing.assert_array_equal(d.support, [1, 4, 9, 27])
    np.testing.assert_array_equal(d.counts, [2, 1, 3, 1])


# --- entropy curve ------------------------------------------------------

def test_deterministic_partition_zero_entropy():
    c = entropy_curve(duration_distribution(partition_from([3] * 50)))
    np.testing.assert_array_equal(c.values, [0.0])
    assert c.scalar == 0.0


def test_uniform_distribution_log_m():
    m = 7
    d = duration_distribution(partition_from(list(range(1, m + 1))))
    c = entropy_curve(d)
    np.testing.assert_allclose(c.values, np.log(m), rtol=1e-15)
    np.testing.assert_allclose(c.scalar, np.log(m), rtol=1e-15)


def test_scalar_is_weighted_mean(brownian_path):
    d = duration_distribution(detect_clusters(brownian_path, 100))
    c = entropy_curve(d)
    assert c.scalar == pytest.approx(float(np.dot(d.probabilities, c.values)), abs=0)
    assert (c.values >= 0.0).all()


# --- power-law fit ------------------------------------------------------

def test_exact_power_law_recovered():
    tau = np.arange(1, 51)
    p = tau ** -1.5
    d = dist_from(tau, p / p.sum(), total=10 ** 9)
    fit = fit_power_law(d, (1, 50))
    assert fit.alpha == pytest.approx(1.5, abs=1e-6)
    assert fit.residual < 1e-6


def test_exponential_negative_control():
    tau = np.arange(1, 51)
    p = np.exp(-tau.astype(float))
    # exact probabilities, no rounding: build counts directly from weights
    d = DurationDistribution(100, tau, np.ones_like(tau), p / p.sum())
    fit = fit_power_law(d, (1, 50))
    assert fit.residual > 1.0  # far from any power law


def test_power_law_default_range():
    assert default_power_law_range(100) == (2, 50)
    tau = np.arange(1, 201)
    p = tau ** -1.2
    d = dist_from(tau, p / p.sum(), window_n=100, total=10 ** 9)
    fit = fit_power_law(d)
    assert fit.fit_range == (2, 50)
    assert fit.alpha == pytest.approx(1.2, abs=1e-3)


def test_power_law_insufficient_support():
    d = dist_from([1, 2, 100], [0.5, 0.3, 0.2])
    with pytest.raises(InsufficientSupport):
        fit_power_law(d, (1, 3))


def test_alpha_recovered_in_scaling_regime(brownian_path):
    # wide scale separation (tau well below the window) is where the
    # duration exponent approaches 2 - H; for H = 0.5 that is 1.5
    d = duration_distribution(detect_clusters(brownian_path, 400))
    fit = fit_power_law(d, (2, 80))
    assert fit.alpha == pytest.approx(1.5, abs=0.15)


# --- three-parameter model fit -------------------------------------------

def test_entropy_model_exact_inversion():
    tau = np.arange(1, 301)
    s0, alpha, inv_n = -1.0, 1.5, 0.01
    values = s0 + alpha * np.log(tau) + inv_n * tau
    curve = type("C", (), {"support": tau, "values": values, "window_n": 100})
    fit = fit_entropy_model(curve)
    assert fit.s0 == pytest.approx(s0, abs=1e-8)
    assert fit.alpha == pytest.approx(alpha, abs=1e-8)
    assert fit.inv_n == pytest.approx(inv_n, abs=1e-8)
    assert fit.residual < 1e-10


def test_entropy_model_requires_spanning_support():
    tau = np.arange(1, 50)  # entirely below n = 100
    curve = type("C", (), {"support": tau, "values": np.log(tau + 1.0), "window_n": 100})
    with pytest.raises(InsufficientSupport):
        fit_entropy_model(curve)


def test_entropy_model_single_point():
    curve = type("C", (), {"support": np.array([1]), "values": np.array([0.0]),
                           "window_n": 100})
    with pytest.raises(InsufficientSupport):
        fit_entropy_model(curve)


def test_fitted_ramp_coefficient_decreases_with_window(brownian_path):
    # larger windows push the decay shoulder out, so the fitted linear
    # coefficient must fall monotonically
    fitted = []
    for n in (50, 100, 200):
        curve = entropy_curve(duration_distribution(detect_clusters(brownian_path, n)))
        fitted.append(fit_entropy_model(curve).inv_n)
    assert fitted[0] > fitted[1] > fitted[2]
