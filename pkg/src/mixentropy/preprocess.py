"""Returns and rolling volatility derived from price series."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import HorizonTooLarge, WindowTooLarge, WindowTooSmall

#: Volatility windows, in minutes, from half a 660-minute trading day up to
#: one trading month. The default ladder used by the analysis sweeps.
DEFAULT_VOL_WINDOWS = (330, 660, 1320, 1980, 2640, 3300, 3960, 4620,
                       5280, 5940, 6600, 13200)

MEAN_MODES = ("paper", "standard")


@dataclass(frozen=True)
class ReturnSeries:
    label: str
    kind: str  # "linear" | "logarithmic"
    horizon_h: int
    values: np.ndarray

    def __post_init__(self):
        if self.kind not in ("linear", "logarithmic"):
            raise ValueError(f"unknown return kind {self.kind!r}")
        if self.horizon_h < 1:
            raise ValueError("horizon_h must be >= 1")
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))

    def __len__(self):
        return self.values.size


@dataclass(frozen=True)
class VolatilitySeries:
    label: str
    window_T: int
    values: np.ndarray  # all >= 0
    mean_mode: str = "paper"

    def __post_init__(self):
        if self.window_T < 2:
            raise WindowTooSmall("window_T must be >= 2")
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))
        if (self.values < 0).any():
            raise ValueError("volatility values must be non-negative")

    def __len__(self):
        return self.values.size


def _check_horizon(n_prices, h):
    if not 1 <= h < n_prices:
        raise HorizonTooLarge(f"horizon must satisfy 1 <= h < {n_prices}, got {h}")


def linear_returns(prices, h=1):
    """Price differences ``p[t+h] - p[t]`` at horizon ``h`` steps."""
    _check_horizon(len(prices), h)
    v = prices.values
    return ReturnSeries(prices.label, "linear", h, v[h:] - v[:-h])


def log_returns(prices, h=1):
    """Natural-log differences ``log p[t+h] - log p[t]``.

    Positivity of the prices is guaranteed by :class:`PriceSeries`. Because
    the logs are differenced, rescaling every price by a common positive
    factor leaves the result unchanged up to float rounding.
    """
    _check_horizon(len(prices), h)
    lv = np.log(prices.values)
    return ReturnSeries(prices.label, "logarithmic", h, lv[h:] - lv[:-h])


def rolling_volatility(returns, T, mean_denominator="paper"):
    """Rolling dispersion of ``T`` consecutive returns, stride 1.

    Each window yields ``sqrt(sum((r - mu)^2) / (T - 1))`` where the window
    mean ``mu`` is ``sum(r)`` divided by T - 1 in ``"paper"`` mode (the
    variant this engine reproduces) or by T in ``"standard"`` mode (the
    textbook sample estimator). The output is shorter than the input by
    T - 1 samples.
    """
    if mean_denominator not in MEAN_MODES:
        raise ValueError(f"mean_denominator must be one of {MEAN_MODES}")
    if T < 2:
        raise WindowTooSmall(f"volatility window must be >= 2, got {T}")
    r = returns.values
    if T > r.size:
        raise WindowTooLarge(f"volatility window {T} exceeds series length {r.size}")

    c1 = np.concatenate([[0.0], np.cumsum(r, dtype=np.float64)])
    c2 = np.concatenate([[0.0], np.cumsum(r * r, dtype=np.float64)])
    s1 = c1[T:] - c1[:-T]
    s2 = c2[T:] - c2[:-T]
    denom = T - 1 if mean_denominator == "paper" else T
    mu = s1 / denom
    # sum((r - mu)^2) expanded; clamp tiny negative rounding residue
    ss = s2 - 2.0 * mu * s1 + T * mu * mu
    var = np.maximum(ss, 0.0) / (T - 1)
    return VolatilitySeries(returns.label, T, np.sqrt(var), mean_denominator)
