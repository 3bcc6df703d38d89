"""Independent reference implementations used as test oracles.

Everything here is deliberately written the slow, obvious way (plain Python
loops, brute-force enumeration) and stays independent of the library code
it checks.
"""

import itertools

import numpy as np


def scan_clusters(x, n):
    """Index-by-index cluster scanner: trailing mean via plain running sums,
    tie (d == 0) keeps the previous run's sign, leading ties skipped.

    Returns (crossing_indices, durations) in parent coordinates. Integer
    input is compared in exact integer arithmetic.
    """
    x = list(x)
    integer_input = all(isinstance(v, (int, np.integer)) for v in x)
    crossings = []
    current = 0
    for t in range(n - 1, len(x)):
        window = x[t - n + 1: t + 1]
        if integer_input:
            d = n * int(x[t]) - sum(int(v) for v in window)
        else:
            d = x[t] - sum(window) / n
        sign = 0 if d == 0 else (1 if d > 0 else -1)
        if sign == 0:
            sign = current
        if current == 0:
            current = sign
        elif sign != 0 and sign != current:
            crossings.append(t)
            current = sign
    durations = [b - a for a, b in zip(crossings, crossings[1:])]
    return crossings, durations


def rolling_vol_reference(returns, T, mean_denominator="paper"):
    """Direct evaluation of the printed volatility formula, one window at a
    time with plain Python sums."""
    out = []
    denom = (T - 1) if mean_denominator == "paper" else T
    for start in range(len(returns) - T + 1):
        window = [float(v) for v in returns[start:start + T]]
        mu = sum(window) / denom
        out.append((sum((r - mu) ** 2 for r in window) / (T - 1)) ** 0.5)
    return np.asarray(out)


def simplex_grid(k, step=100):
    """Every long-only weight vector with components that are multiples of
    1/step (dense simplex grid; step=100 gives 0.01 resolution)."""
    points = []
    for cuts in itertools.combinations(range(step + k - 1), k - 1):
        prev = -1
        parts = []
        for c in cuts:
            parts.append(c - prev - 1)
            prev = c
        parts.append(step + k - 2 - prev)
        points.append(parts)
    return np.asarray(points, dtype=float) / step


def grid_best_sharpe(mean, cov, risk_free_rate, step=100):
    """Best Sharpe ratio over the dense simplex grid."""
    W = simplex_grid(len(mean), step)
    variance = np.einsum("ij,jk,ik->i", W, cov, W)
    ok = variance > 0
    sharpe = np.full(len(W), -np.inf)
    sharpe[ok] = (W[ok] @ mean - risk_free_rate) / np.sqrt(variance[ok])
    return float(sharpe.max())


def garch_returns(length, arch, persistence, eps, scale=0.01):
    """GARCH(1,1)-style surrogate returns with unit target variance, driven
    by the given innovation array."""
    omega = max(1e-7, 1.0 - arch - persistence)
    variance = np.empty(length)
    r = np.empty(length)
    variance[0] = 1.0
    r[0] = eps[0]
    for t in range(1, length):
        variance[t] = omega + arch * r[t - 1] ** 2 + persistence * variance[t - 1]
        r[t] = np.sqrt(variance[t]) * eps[t]
    return scale * r
