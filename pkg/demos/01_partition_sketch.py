#!/usr/bin/env python3
"""How the partition works: a series crosses its trailing moving average,
and every stretch between two consecutive crossings is one cluster.

Run:  python3 demos/01_partition_sketch.py
Writes demos/output/partition_sketch.png
"""

from pathlib import Path

import matplotlib
matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from mixentropy import FbmSpec, detect_clusters, generate_fbm, moving_average

OUT = Path(__file__).parent / "output"
OUT.mkdir(exist_ok=True)

# a short random walk stands in for a minute-sampled price series
x = generate_fbm(FbmSpec(0.5, 240, seed=8))

fig, axes = plt.subplots(2, 1, figsize=(9, 6), sharex=True)
for ax, n in zip(axes, (5, 10)):
    ma = moving_average(x, n)
    part = detect_clusters(x, n)
    t = np.arange(x.size)

    ax.plot(t, x, lw=0.9, color="0.2", label="series")
    ax.plot(t[ma.offset:], ma.values, lw=1.4, color="tab:red",
            label=f"trailing mean, n={n}")
    # shade alternate clusters so the partition is visible
    for k, (a, b) in enumerate(zip(part.crossing_indices[:-1],
                                   part.crossing_indices[1:])):
        ax.axvspan(a, b, color="tab:blue", alpha=0.25 if k % 2 else 0.10)
    ax.set_ylabel("level")
    ax.legend(loc="upper left", fontsize=8)
    ax.set_title(f"n={n}: {part.cluster_count} complete clusters, "
                 f"durations {part.durations[:8].tolist()}...", fontsize=9)

axes[-1].set_xlabel("sample index (minutes)")
fig.tight_layout()
fig.savefig(OUT / "partition_sketch.png", dpi=150)
print(f"wrote {OUT / 'partition_sketch.png'}")

# the same series, shifted and rescaled, partitions identically
shifted = detect_clusters(3.5 * x + 41.0, 10)
assert np.array_equal(shifted.durations, detect_clusters(x, 10).durations)
print("affine invariance: durations unchanged under 3.5*x + 41")
