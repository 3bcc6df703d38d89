"""Entropy-curve integrals, the scalar heterogeneity index and allocation
weights derived from it.

Both integrals use the trapezoidal rule on the observed (possibly
non-uniform) grids: the information curve is integrated over its own
support, and the per-window results are integrated over the window grid.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import AllMaximallyHeterogeneous, EmptyCurve, RangeTooNarrow

_trapz = getattr(np, "trapezoid", None) or np.trapz


def hmix(curve):
    """Negative trapezoidal integral of the information curve over its
    observed support, from the smallest to the largest duration seen."""
    if curve.support.size == 0:
        raise EmptyCurve("entropy curve has empty support")
    if curve.support.size == 1:
        return 0.0
    return float(-_trapz(curve.values, curve.support.astype(float)))


@dataclass(frozen=True)
class HMixCurve:
    label: str
    windows: np.ndarray
    values: np.ndarray
    tau_max: np.ndarray | None = None  # largest observed duration per window

    def __post_init__(self):
        windows = np.asarray(self.windows, dtype=np.int64)
        values = np.asarray(self.values, dtype=float)
        object.__setattr__(self, "windows", windows)
        object.__setattr__(self, "values", values)
        if windows.size != values.size:
            raise ValueError("windows and values must align")
        if windows.size and (np.diff(windows) <= 0).any():
            raise ValueError("windows must be strictly increasing")
        if not np.isfinite(values).all():
            raise ValueError("values must be finite")


def mix(hmix_curve, n_min, n_max):
    """Magnitude of the trapezoidal integral of the per-window index over
    the window grid restricted to ``[n_min, n_max]``."""
    inside = (hmix_curve.windows >= n_min) & (hmix_curve.windows <= n_max)
    if inside.sum() < 2:
        raise RangeTooNarrow(
            f"need >= 2 windows inside [{n_min}, {n_max}], have {int(inside.sum())}")
    return float(abs(_trapz(hmix_curve.values[inside],
                            hmix_curve.windows[inside].astype(float))))


def rescale_mix(raw):
    """Min-max rescale onto [0, 1]; a spread-free set maps to all zeros."""
    raw = np.asarray(raw, dtype=float)
    if raw.size == 0:
        raise ValueError("need at least one value")
    lo = raw.min()
    spread = raw.max() - lo
    if spread == 0.0:
        return np.zeros_like(raw)
    return (raw - lo) / spread


def mix_weights(rescaled):
    """Allocation proportional to one minus the rescaled index.

    The least heterogeneous series gets the largest weight; weights sum
    to 1 and are non-negative.
    """
    r = np.asarray(rescaled, dtype=float)
    if ((r < 0.0) | (r > 1.0)).any():
        raise ValueError("rescaled values must lie in [0, 1]")
    comp = 1.0 - r
    total = comp.sum()
    if total <= 0.0:
        raise AllMaximallyHeterogeneous("every rescaled value is 1; weights undefined")
    return comp / total


@dataclass(frozen=True)
class MixReport:
    labels: tuple
    raw_mix: np.ndarray
    rescaled_mix: np.ndarray
    weights: np.ndarray
    n_range: tuple
    integration_method: str = "trapezoid"

    def __post_init__(self):
        object.__setattr__(self, "labels", tuple(self.labels))
        for name in ("raw_mix", "rescaled_mix", "weights"):
            object.__setattr__(self, name, np.asarray(getattr(self, name), dtype=float))
        k = len(self.labels)
        if not (self.raw_mix.size == self.rescaled_mix.size == self.weights.size == k):
            raise ValueError("labels and value vectors must align")
        if abs(self.weights.sum() - 1.0) > 1e-12 or (self.weights < 0).any():
            raise ValueError("weights must be a probability vector")

    def to_dict(self):
        return {
            "labels": list(self.labels),
            "raw_mix": [float(v) for v in self.raw_mix],
            "rescaled_mix": [float(v) for v in self.rescaled_mix],
            "weights": [float(v) for v in self.weights],
            "n_range": [int(self.n_range[0]), int(self.n_range[1])],
            "integration_method": self.integration_method,
            "weight_rule": "1-rescaled_mix, normalized",
        }


def build_mix_report(curves, n_min, n_max):
    """Reduce one per-window curve per series to the cross-series report."""
    curves = list(curves)
    raw = np.array([mix(c, n_min, n_max) for c in curves])
    rescaled = rescale_mix(raw)
    weights = mix_weights(rescaled)
    return MixReport(
        labels=tuple(c.label for c in curves),
        raw_mix=raw,
        rescaled_mix=rescaled,
        weights=weights,
        n_range=(int(n_min), int(n_max)),
    )
