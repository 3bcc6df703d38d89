"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line
(run with ``pytest tests/test_acceptance.py -v -s`` to see every line).

Statistical criteria run on seed-fixed synthetic paths, so results are
reproducible bit for bit. Expected values come from theory or from the
independent oracles in ``oracles.py``, never from the code under test.
"""

import dataclasses
import itertools
import json

import numpy as np
import pytest

from mixentropy import (
    AssetPanel,
    FbmSpec,
    HMixCurve,
    PriceSeries,
    RunConfig,
    build_mix_report,
    detect_clusters,
    duration_distribution,
    entropy_curve,
    fit_entropy_model,
    fit_power_law,
    generate_fbm,
    hmix,
    linear_returns,
    maximize_sharpe,
    mix,
    mix_weights,
    panel_stats,
    rescale_mix,
    rolling_volatility,
    run_pipeline,
    write_series,
)
from mixentropy.errors import DegenerateSeries

from oracles import garch_returns, grid_best_sharpe, scan_clusters

N_PATH = 2 ** 17
HURSTS = (0.3, 0.5, 0.7)
SEEDS = {0.3: 424242, 0.5: 424243, 0.7: 424244}


def report(num, name, ok, detail):
    print(f"\n[criterion {num:>2}] {name}: {'PASS' if ok else 'FAIL'} — {detail}")
    assert ok, f"criterion {num} ({name}): {detail}"


@pytest.fixture(scope="module")
def paths():
    return {H: generate_fbm(FbmSpec(H, N_PATH, seed=SEEDS[H])) for H in HURSTS}


@pytest.fixture(scope="module")
def partitions(paths):
    out = {}
    for H in HURSTS:
        for n in (50, 100, 200):
            out[(H, n)] = detect_clusters(paths[H], n)
    return out


def test_criterion_1_alpha_recovery(partitions):
    details = []
    ok = True
    for H in HURSTS:
        dist = duration_distribution(partitions[(H, 100)])
        alpha = fit_power_law(dist).alpha  # default range [2, n/2]
        target = 2.0 - H
        good = target - 0.15 <= alpha <= target + 0.15
        ok &= good
        details.append(f"H={H}: alpha={alpha:.3f} target={target:.2f}"
                       f"{'' if good else ' <-- out of band'}")
    report(1, "alpha recovery on self-affine paths", ok, "; ".join(details))


def test_criterion_2_entropy_model_ramp(partitions):
    details = []
    ok = True
    for H in HURSTS:
        for n in (50, 100, 200):
            curve = entropy_curve(duration_distribution(partitions[(H, n)]))
            inv_n = fit_entropy_model(curve).inv_n
            good = abs(inv_n - 1.0 / n) <= 0.3 / n
            ok &= good
            details.append(f"H={H},n={n}: inv_n={inv_n:+.5f}"
                           f"{'' if good else ' <-- outside +/-30% of 1/n'}")
    report(2, "entropy-model ramp coefficient", ok, "; ".join(details))


def test_criterion_3_small_tau_collapse(paths):
    x = paths[0.5]
    windows = (30, 50, 100, 150, 200)
    curves = {n: entropy_curve(duration_distribution(detect_clusters(x, n)))
              for n in windows}
    worst = 0.0
    for n1, n2 in itertools.combinations(windows, 2):
        c1, c2 = curves[n1], curves[n2]
        cut = min(n1, n2) / 5
        common = np.intersect1d(c1.support[c1.support <= cut],
                                c2.support[c2.support <= cut])
        v1 = c1.values[np.searchsorted(c1.support, common)]
        v2 = c2.values[np.searchsorted(c2.support, common)]
        worst = max(worst, float(np.mean(np.abs(v1 - v2))))
    report(3, "small-duration collapse across windows", worst < 0.2,
           f"worst mean |dS| over window pairs = {worst:.4f} nats (< 0.2)")


def test_criterion_4_partition_completeness(partitions):
    rng = np.random.default_rng(20260810)
    checked = 0
    for _ in range(1000):
        length = int(rng.integers(8, 65))
        n = int(rng.integers(2, 9))
        if rng.random() < 0.5:
            x = rng.integers(0, 6, size=length)
        else:
            x = np.cumsum(rng.standard_normal(length))
        crossings, durations = scan_clusters(list(x), n)
        try:
            part = detect_clusters(x, n)
        except DegenerateSeries:
            assert not crossings
            continue
        np.testing.assert_array_equal(part.crossing_indices, crossings)
        np.testing.assert_array_equal(part.durations, durations)
        if part.durations.size:
            assert part.durations.sum() == (part.crossing_indices[-1]
                                            - part.crossing_indices[0])
        checked += 1
    for part in partitions.values():  # every synthetic run, exactly
        assert part.durations.sum() == (part.crossing_indices[-1]
                                        - part.crossing_indices[0])
    report(4, "partition completeness + scanner equivalence", True,
           f"{checked} randomized series exact, {len(partitions)} synthetic runs exact")


def test_criterion_5_normalization(partitions, tmp_path):
    worst = 0.0
    for part in partitions.values():
        dist = duration_distribution(part)
        worst = max(worst, abs(float(dist.probabilities.sum()) - 1.0))
    # and every distribution actually emitted by a pipeline run
    inp = write_series(100.0 + 0.01 * generate_fbm(FbmSpec(0.5, 8192, seed=6)),
                       tmp_path / "in.csv")
    run = run_pipeline(RunConfig(inputs=((str(inp), "x"),),
                                 output_dir=str(tmp_path / "run"),
                                 ma_windows_n=(30, 50, 100)))
    emitted = 0
    for tsv in run.output_dir.rglob("distribution.tsv"):
        rows = [line.split("\t") for line in tsv.read_text().splitlines()[1:]]
        worst = max(worst, abs(sum(float(r[2]) for r in rows) - 1.0))
        emitted += 1
    report(5, "distribution normalization", worst <= 1e-12,
           f"max |sum P - 1| = {worst:.2e} over {len(partitions)} in-memory "
           f"+ {emitted} emitted distributions")


def test_criterion_6_affine_invariance():
    rng = np.random.default_rng(20260810)
    x = np.cumsum(rng.standard_normal(2048))
    base = detect_clusters(x, 20)
    for _ in range(100):
        a = float(rng.uniform(0.05, 20.0))
        b = float(rng.uniform(-500.0, 500.0))
        other = detect_clusters(a * x + b, 20)
        np.testing.assert_array_equal(base.crossing_indices, other.crossing_indices)
        np.testing.assert_array_equal(base.durations, other.durations)
    report(6, "affine invariance of the partition", True,
           "100 random (a > 0, b) draws left crossings and durations identical")


def test_criterion_7_mix_weight_algebra():
    rng = np.random.default_rng(20260810)
    worst_sum = 0.0
    for _ in range(200):
        raw = rng.uniform(0.0, 100.0, size=int(rng.integers(2, 9)))
        rescaled = rescale_mix(raw)
        w = mix_weights(rescaled)
        worst_sum = max(worst_sum, abs(float(w.sum()) - 1.0))
        assert w.min() >= 0.0
        for i, j in itertools.combinations(range(raw.size), 2):
            if rescaled[i] < rescaled[j]:
                assert w[i] > w[j]
    # identical inputs yield equal weights
    twins = [HMixCurve(l, [10, 20, 30], [-1.0, -2.0, -3.0]) for l in ("a", "b")]
    rep = build_mix_report(twins, 10, 30)
    np.testing.assert_allclose(rep.weights, [0.5, 0.5])
    report(7, "index/weight algebra", worst_sum <= 1e-12,
           f"200 random sets: max |sum w - 1| = {worst_sum:.2e}, "
           "anti-monotone, twins weighted equally")


def test_criterion_8_sharpe_solver_vs_grid_oracle():
    rng = np.random.default_rng(20260810)
    worst_gap = -np.inf
    for trial in range(50):
        k = int(rng.integers(2, 5))
        while True:
            mean = rng.normal(0.05, 0.1, k)
            rf = float(rng.normal(0.0, 0.02))
            if (mean > rf).any():  # stays inside the solver's contract
                break
        a = rng.normal(size=(k, k))
        cov = a @ a.T / k + np.diag(rng.uniform(0.01, 0.2, k))
        sol = maximize_sharpe((mean, cov), rf, seed=trial)
        worst_gap = max(worst_gap, grid_best_sharpe(mean, cov, rf) - sol.sharpe)
    assert worst_gap < 1e-6

    # six-asset panel, three dominated: allocation concentrates on 3 of 6
    prng = np.random.default_rng(99)
    rows = 60000
    factor = prng.standard_normal(rows) * 0.005
    good = np.column_stack([
        0.0009 + factor + prng.standard_normal(rows) * 0.008,
        0.0007 + factor + prng.standard_normal(rows) * 0.006,
        0.0005 + factor + prng.standard_normal(rows) * 0.004,
    ])
    bad = np.column_stack([
        -0.0002 + factor + prng.standard_normal(rows) * 0.020,
        0.0000 + factor + prng.standard_normal(rows) * 0.025,
        -0.0004 + factor + prng.standard_normal(rows) * 0.030,
    ])
    sol = maximize_sharpe(panel_stats(AssetPanel(tuple("abcdef"),
                                                 np.column_stack([good, bad]))), 0.0)
    concentrated = sol.weights[3:].max() < 1e-6 and sol.weights[:3].min() > 0.01
    report(8, "Sharpe maximizer vs dense grid oracle",
           worst_gap < 1e-6 and concentrated,
           f"worst (grid - solver) = {worst_gap:.2e} over 50 instances; "
           f"dominated assets weighted {sol.weights[3:].max():.1e}")


def test_criterion_9_price_vs_volatility_contrast():
    length = 2 ** 16
    windows = (10, 15, 20, 30, 40, 50)
    base = 20260810

    def raw_mix_of(series):
        values = [hmix(entropy_curve(duration_distribution(detect_clusters(series, n))))
                  for n in windows]
        return mix(HMixCurve("s", np.asarray(windows), np.asarray(values)), 10, 50)

    price_mix = [raw_mix_of(100.0 + 0.01 * generate_fbm(FbmSpec(0.5, length,
                                                                seed=base + i)))
                 for i in range(6)]
    eps = np.random.default_rng(base + 77).standard_normal(length)
    ladder = [(0.0, 0.0), (0.05, 0.55), (0.10, 0.78),
              (0.15, 0.82), (0.25, 0.73), (0.30, 0.699)]
    vol_mix = []
    for arch, persistence in ladder:
        r = garch_returns(length, arch, persistence, eps)
        prices = PriceSeries("g", 100.0 + np.concatenate([[0.0], np.cumsum(r)]))
        vol = rolling_volatility(linear_returns(prices, 1), 40).values
        vol_mix.append(raw_mix_of(vol))
    price_spread = float(np.ptp(price_mix))
    vol_spread = float(np.ptp(vol_mix))
    report(9, "price vs volatility heterogeneity contrast",
           price_spread < vol_spread,
           f"price spread {price_spread:.0f} < volatility spread {vol_spread:.0f} "
           f"(ratio {vol_spread / price_spread:.2f})")


def test_criterion_10_determinism(tmp_path):
    inputs = []
    for i in range(2):
        path = write_series(100.0 + 0.01 * generate_fbm(FbmSpec(0.5, 8192,
                                                                seed=40 + i)),
                            tmp_path / f"in{i}.csv")
        inputs.append((str(path), f"s{i}"))
    config = RunConfig(inputs=tuple(inputs), output_dir=str(tmp_path / "run"),
                       ma_windows_n=(30, 50), seed=12)
    first = run_pipeline(config)
    (tmp_path / "run").rename(tmp_path / "run_first")
    second = run_pipeline(config)
    identical = first.digest == second.digest
    for p in sorted((tmp_path / "run_first").rglob("*")):
        if p.is_file():
            twin = tmp_path / "run" / p.relative_to(tmp_path / "run_first")
            identical &= twin.read_bytes() == p.read_bytes()
    report(10, "byte-identical reruns", identical,
           f"digest {first.digest[:16]}... reproduced, all files byte-equal")
