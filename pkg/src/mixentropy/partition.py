"""Series/moving-average intersection and cluster extraction.

A cluster is a maximal stretch over which the series stays on one side of
its own trailing moving average; its duration is the number of samples
between the two crossings that delimit it. The stretches before the first
and after the last crossing are censored (their true duration is unknown)
and are discarded rather than counted.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSeries, WindowTooLarge, WindowTooSmall

#: Full moving-average sweep used for the heterogeneity index: 5 samples up
#: to 1500 (minutes, at one-minute sampling).
FULL_MA_SWEEP = tuple(range(5, 1501, 5))


@dataclass(frozen=True)
class MovingAverageSeries:
    window_n: int
    values: np.ndarray
    offset: int  # parent index of values[0]

    def __post_init__(self):
        if self.window_n < 2:
            raise WindowTooSmall("window_n must be >= 2")
        object.__setattr__(self, "values", np.asarray(self.values, dtype=float))


@dataclass(frozen=True)
class ClusterPartition:
    window_n: int
    durations: np.ndarray         # positive integers, in samples
    crossing_indices: np.ndarray  # strictly increasing, parent coordinates

    def __post_init__(self):
        durations = np.asarray(self.durations, dtype=np.int64)
        crossings = np.asarray(self.crossing_indices, dtype=np.int64)
        object.__setattr__(self, "durations", durations)
        object.__setattr__(self, "crossing_indices", crossings)
        if crossings.size and (np.diff(crossings) <= 0).any():
            raise ValueError("crossing indices must be strictly increasing")
        if durations.size:
            if (durations < 1).any():
                raise ValueError("durations must be >= 1")
            if not np.array_equal(durations, np.diff(crossings)):
                raise ValueError("durations must equal gaps between crossings")

    @property
    def cluster_count(self):
        return int(self.durations.size)


def moving_average(x, n):
    """Trailing mean of the last ``n`` samples, defined from index n - 1 on.

    Integer input stays in exact integer arithmetic until the final divide,
    so exact series/average touches are detected exactly downstream.
    """
    x = np.asarray(x)
    if n < 2:
        raise WindowTooSmall(f"moving-average window must be >= 2, got {n}")
    if n > x.size:
        raise WindowTooLarge(f"moving-average window {n} exceeds series length {x.size}")
    acc = np.cumsum(x, dtype=np.int64 if np.issubdtype(x.dtype, np.integer) else np.float64)
    wsum = acc[n - 1:].copy()
    wsum[1:] -= acc[:-n]
    return MovingAverageSeries(n, wsum / n, n - 1)


def detect_clusters(x, n):
    """Crossing indices and cluster durations for window ``n``.

    The sign of ``d = x - ma`` is tracked over the region where the moving
    average exists. ``d == 0`` keeps the sign of the preceding run, so an
    exact touch never opens a unit cluster of its own; leading zeros are
    skipped until the first nonzero sign. A crossing sits at the first index
    of every new sign run, and each duration is the gap between consecutive
    crossings.
    """
    x = np.asarray(x)
    if x.size and np.all(x == x.flat[0]):
        # checked exactly up front: the windowed float sums of a constant
        # series carry rounding noise that would fake sign structure
        raise DegenerateSeries("constant series equals its moving average everywhere")
    ma = moving_average(x, n)
    d = x[ma.offset:] - ma.values
    s = np.sign(d)
    nonzero = np.flatnonzero(s)
    if nonzero.size == 0:
        raise DegenerateSeries(f"series equals its {n}-sample moving average everywhere")

    eff = s[nonzero[0]:]
    carry = np.maximum.accumulate(np.where(eff != 0, np.arange(eff.size), -1))
    eff = eff[carry]  # zeros inherit the previous run's sign

    run_starts = np.flatnonzero(eff[1:] != eff[:-1]) + 1
    crossings = ma.offset + nonzero[0] + run_starts
    durations = np.diff(crossings) if crossings.size >= 2 else np.empty(0, dtype=np.int64)
    return ClusterPartition(n, durations, crossings)
