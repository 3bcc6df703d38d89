"""Sharpe-ratio benchmark: asset-panel statistics and a long-only maximizer.

The maximizer is a contract, not a method: any point it returns must match
an independent dense simplex-grid search within 1e-6 in achieved Sharpe (the
test suite enforces this). The implementation runs SLSQP from several
deterministic starts and polishes with a closed-form tangency solution
restricted to the active support.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.optimize import minimize

from .errors import TooFewRows, ZeroVariancePortfolio


@dataclass(frozen=True)
class AssetPanel:
    labels: tuple
    returns_matrix: np.ndarray  # rows = time, columns = assets

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        matrix = np.asarray(self.returns_matrix, dtype=float)
        object.__setattr__(self, "returns_matrix", matrix)
        if matrix.ndim != 2:
            raise ValueError("returns_matrix must be 2-D (time x assets)")
        if matrix.shape[0] < 2:
            raise TooFewRows("need at least 2 time rows")
        if matrix.shape[1] != len(self.labels):
            raise ValueError("one label per asset column required")


def panel_stats(panel):
    """Sample means and (rows - 1)-denominator covariance, symmetrized."""
    r = panel.returns_matrix
    if r.shape[0] < 2:
        raise TooFewRows("need at least 2 time rows")
    mean = r.mean(axis=0)
    cov = np.atleast_2d(np.cov(r, rowvar=False, ddof=1))
    return mean, 0.5 * (cov + cov.T)


def sharpe_ratio(weights, stats, risk_free_rate=0.0):
    """Excess mean over standard deviation for a simplex weight vector."""
    mean, cov = stats
    w = np.asarray(weights, dtype=float)
    if w.min() < -1e-9 or abs(w.sum() - 1.0) > 1e-9:
        raise ValueError("weights must be long-only and sum to 1")
    variance = float(w @ cov @ w)
    if variance <= 0.0:
        raise ZeroVariancePortfolio("portfolio variance is zero")
    return float((w @ mean - risk_free_rate) / np.sqrt(variance))


@dataclass(frozen=True)
class SharpeSolution:
    weights: np.ndarray
    sharpe: float
    risk_free_rate: float
    degenerate: bool = False  # no asset mean exceeds the risk-free rate

    def __post_init__(self):
        object.__setattr__(self, "weights", np.asarray(self.weights, dtype=float))

    def to_dict(self, labels=None):
        out = {
            "weights": [float(w) for w in self.weights],
            "sharpe": None if np.isnan(self.sharpe) else float(self.sharpe),
            "risk_free_rate": float(self.risk_free_rate),
            "degenerate": bool(self.degenerate),
        }
        if labels is not None:
            out["labels"] = list(labels)
        return out


def _safe_sharpe(w, mean, cov, rf):
    variance = float(w @ cov @ w)
    if variance <= 0.0:
        return -np.inf
    return float((w @ mean - rf) / np.sqrt(variance))


def _clean(w):
    w = np.clip(np.asarray(w, dtype=float), 0.0, None)
    total = w.sum()
    return w / total if total > 0 else np.full(w.size, 1.0 / w.size)


def _tangency_candidate(mean, cov, rf, active=None):
    # unconstrained maximizer direction y ~ cov^-1 (mean - rf); feasible on
    # the simplex only when it can be scaled to be non-negative
    k = mean.size
    idx = np.arange(k) if active is None else np.flatnonzero(active)
    if idx.size == 0:
        return None
    sub = cov[np.ix_(idx, idx)]
    try:
        y = np.linalg.lstsq(sub, mean[idx] - rf, rcond=None)[0]
    except np.linalg.LinAlgError:
        return None
    if y.sum() <= 0 or (y < -1e-10 * max(1.0, np.abs(y).max())).any():
        return None
    w = np.zeros(k)
    w[idx] = np.clip(y, 0.0, None)
    return _clean(w)


def _minimum_variance(cov, k):
    res = minimize(
        lambda w: float(w @ cov @ w),
        np.full(k, 1.0 / k),
        jac=lambda w: 2.0 * (cov @ w),
        method="SLSQP",
        bounds=[(0.0, 1.0)] * k,
        constraints=[{"type": "eq", "fun": lambda w: w.sum() - 1.0}],
        options={"maxiter": 300, "ftol": 1e-14},
    )
    return _clean(res.x if res.success else np.full(k, 1.0 / k))


def maximize_sharpe(stats, risk_free_rate=0.0, n_random_starts=8, seed=0):
    """Long-only, fully invested weights maximizing the Sharpe ratio.

    Deterministic multi-start: the uniform point, every single-asset vertex
    that beats the risk-free rate, the closed-form tangency point when it is
    feasible, and seeded Dirichlet draws. Ties are broken lexicographically
    so repeated calls agree bit for bit.

    When no asset mean exceeds the risk-free rate the ratio has no useful
    maximum; the minimum-variance point is returned with ``degenerate=True``.
    """
    mean, cov = stats
    mean = np.asarray(mean, dtype=float)
    cov = np.atleast_2d(np.asarray(cov, dtype=float))
    k = mean.size
    rf = float(risk_free_rate)

    if k == 1:
        w = np.array([1.0])
        return SharpeSolution(w, _safe_sharpe(w, mean, cov, rf), rf,
                              degenerate=bool(mean[0] <= rf))

    if not (mean > rf).any():
        w = _minimum_variance(cov, k)
        return SharpeSolution(w, _safe_sharpe(w, mean, cov, rf), rf, degenerate=True)

    starts = [np.full(k, 1.0 / k)]
    for i in np.flatnonzero(mean > rf):
        vertex = np.zeros(k)
        vertex[i] = 1.0
        starts.append(vertex)
    tangency = _tangency_candidate(mean, cov, rf)
    if tangency is not None:
        starts.append(tangency)
    rng = np.random.default_rng(seed)
    starts.extend(rng.dirichlet(np.ones(k)) for _ in range(n_random_starts))

    def neg_sharpe(w):
        value = _safe_sharpe(w, mean, cov, rf)
        return 1e9 if not np.isfinite(value) else -value

    candidates = []
    for x0 in starts:
        candidates.append(_clean(x0))
        res = minimize(
            neg_sharpe, x0, method="SLSQP",
            bounds=[(0.0, 1.0)] * k,
            constraints=[{"type": "eq", "fun": lambda w: w.sum() - 1.0}],
            options={"maxiter": 300, "ftol": 1e-14},
        )
        if np.isfinite(res.x).all():
            candidates.append(_clean(res.x))

    # polish: closed-form tangency restricted to each candidate's support
    for w in list(candidates):
        polished = _tangency_candidate(mean, cov, rf, active=w > 1e-9)
        if polished is not None:
            candidates.append(polished)

    best = min(candidates,
               key=lambda w: (-_safe_sharpe(w, mean, cov, rf), tuple(np.round(w, 12))))
    return SharpeSolution(best, _safe_sharpe(best, mean, cov, rf), rf)
