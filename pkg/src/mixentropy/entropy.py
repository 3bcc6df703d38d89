"""Duration statistics: the empirical distribution P(tau, n), the
per-duration information curve S(tau, n) = -log P, and least-squares fits
of the power-law and log-linear models the curves are tested against.

Durations are kept as exact integer classes; no binning or smoothing happens
here (log-binning, if wanted, belongs in plot emitters). Classes never
observed are absent from the support, not zero-probability entries.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import EmptyPartition, InsufficientSupport


@dataclass(frozen=True)
class DurationDistribution:
    window_n: int
    support: np.ndarray        # distinct durations, strictly increasing
    counts: np.ndarray
    probabilities: np.ndarray

    def __post_init__(self):
        support = np.asarray(self.support, dtype=np.int64)
        counts = np.asarray(self.counts, dtype=np.int64)
        probs = np.asarray(self.probabilities, dtype=float)
        object.__setattr__(self, "support", support)
        object.__setattr__(self, "counts", counts)
        object.__setattr__(self, "probabilities", probs)
        if not (support.size == counts.size == probs.size > 0):
            raise ValueError("support, counts and probabilities must align and be non-empty")
        if (np.diff(support) <= 0).any() or support[0] < 1:
            raise ValueError("support must be strictly increasing positive durations")
        if (counts < 1).any():
            raise ValueError("counts must be positive")
        if abs(probs.sum() - 1.0) > 1e-12:
            raise ValueError("probabilities must sum to 1 within 1e-12")

    @property
    def total_count(self):
        return int(self.counts.sum())


def duration_distribution(partition):
    """Exact normalized histogram of the partition's cluster durations."""
    if partition.durations.size == 0:
        raise EmptyPartition(f"window {partition.window_n}: no complete clusters")
    support, counts = np.unique(partition.durations, return_counts=True)
    return DurationDistribution(partition.window_n, support, counts, counts / counts.sum())


@dataclass(frozen=True)
class EntropyCurve:
    """Per-duration information -log P(tau, n), in nats.

    ``scalar`` is the probability-weighted mean of the curve, i.e. the
    Shannon entropy of the duration distribution.
    """

    window_n: int
    support: np.ndarray
    values: np.ndarray
    scalar: float

    def __post_init__(self):
        object.__setattr__(self, "support", np.asarray(self.support, dtype=np.int64))
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))


def entropy_curve(dist):
    """Information content of each duration class, plus the scalar entropy."""
    values = -np.log(dist.probabilities) + 0.0  # +0.0 folds -0.0 into 0.0
    scalar = float(np.dot(dist.probabilities, values))
    return EntropyCurve(dist.window_n, dist.support, values, scalar)


@dataclass(frozen=True)
class PowerLawFit:
    alpha: float
    fit_range: tuple  # (tau_lo, tau_hi), inclusive
    residual: float   # rms of log P about the fitted line
    n_points: int

    def __post_init__(self):
        if not self.fit_range[0] < self.fit_range[1]:
            raise ValueError("fit_range must satisfy tau_lo < tau_hi")
        if not np.isfinite(self.alpha):
            raise ValueError("alpha must be finite")


def default_power_law_range(window_n):
    """Durations in [2, n/2]: below the decay shoulder near tau ~ n."""
    return (2, window_n // 2)


def fit_power_law(dist, fit_range=None):
    """Least-squares slope of log P against log tau inside ``fit_range``.

    Returns ``alpha = -slope``; the rms residual flags how far the
    distribution is from a pure power law over that range.
    """
    if fit_range is None:
        fit_range = default_power_law_range(dist.window_n)
    lo, hi = fit_range
    mask = (dist.support >= lo) & (dist.support <= hi)
    if mask.sum() < 3:
        raise InsufficientSupport(
            f"need >= 3 support points in [{lo}, {hi}], have {int(mask.sum())}")
    log_tau = np.log(dist.support[mask].astype(float))
    log_p = np.log(dist.probabilities[mask])
    slope, intercept = np.polyfit(log_tau, log_p, 1)
    resid = log_p - (slope * log_tau + intercept)
    return PowerLawFit(
        alpha=float(-slope),
        fit_range=(int(lo), int(hi)),
        residual=float(np.sqrt(np.mean(resid ** 2))),
        n_points=int(mask.sum()),
    )


@dataclass(frozen=True)
class EntropyModelFit:
    s0: float
    alpha: float
    inv_n: float
    residual: float


def fit_entropy_model(curve, fit_range=None):
    """Least squares for ``S(tau) = s0 + alpha * log(tau) + inv_n * tau``.

    The support must reach both sides of the moving-average window so the
    logarithmic and linear terms are separately identifiable; by default the
    full support enters the fit.
    """
    support = curve.support
    values = curve.values
    if fit_range is not None:
        lo, hi = fit_range
        mask = (support >= lo) & (support <= hi)
        support, values = support[mask], values[mask]
    if support.size < 3:
        raise InsufficientSupport(f"need >= 3 support points, have {support.size}")
    if not ((support < curve.window_n).any() and (support > curve.window_n).any()):
        raise InsufficientSupport(
            f"support must span both sides of the window n={curve.window_n}")
    tau = support.astype(float)
    design = np.column_stack([np.ones_like(tau), np.log(tau), tau])
    coef, *_ = np.linalg.lstsq(design, values, rcond=None)
    resid = values - design @ coef
    return EntropyModelFit(
        s0=float(coef[0]),
        alpha=float(coef[1]),
        inv_n=float(coef[2]),
        residual=float(np.sqrt(np.mean(resid ** 2))),
    )
