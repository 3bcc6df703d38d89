"""End-to-end run orchestration: config, the (series x T x n) job grid,
artifact files and the reproducibility manifest.

Output layout, rooted at the run's output directory::

    <label>/T<T>/n<n>/distribution.tsv   tau, count, P, S per duration class
    <label>/T<T>/n<n>/entropy.tsv        tau, S
    <label>/T<T>/n<n>/summary.json       scalar entropy + model fits
    <label>/T<T>/hmix.tsv                per-window index table
    mix_T<T>.json                        cross-series report + weights
    weights_T<T>.tsv                     entropy weights vs Sharpe weights
    sharpe.json                          Sharpe benchmark solution
    manifest.json                        resolved config + content digest

``T0`` marks runs on raw prices (no volatility windowing). Every write goes
to a staging directory first; on failure nothing is left behind. Reruns of
the same config over the same inputs are byte-identical, manifest included.
"""

from __future__ import annotations

import concurrent.futures
import hashlib
import json
import shutil
import tempfile
from dataclasses import asdict, dataclass, replace
from pathlib import Path

import numpy as np

from . import errors
from .entropy import duration_distribution, entropy_curve, fit_entropy_model, fit_power_law
from .errors import InsufficientSupport, InvalidConfig
from .heterogeneity import HMixCurve, build_mix_report, hmix
from .ingest import load_series, truncate_to_common_length
from .partition import detect_clusters
from .portfolio import AssetPanel, maximize_sharpe, panel_stats
from .preprocess import MEAN_MODES, linear_returns, log_returns, rolling_volatility

SERIES_KINDS = ("price", "volatility_linear", "volatility_log")

#: Decision modes baked into this engine, recorded in every manifest.
DECISION_MODES = {
    "moving_average": "trailing",
    "tie_rule": "zero-difference folds into the preceding sign run",
    "censored_ends": "discarded",
    "entropy_log_base": "e",
    "integration": "trapezoid on the observed grid",
    "hmix_lower_limit": "smallest observed duration",
    "rescaling": "min-max within the compared set",
    "weight_rule": "1 - rescaled mix, normalized",
    "truncation": "tail dropped to the shortest series",
}


def parse_window_spec(spec):
    """Window list from '30,50,100' or a 'lo:hi:step' range (hi inclusive)."""
    if isinstance(spec, (list, tuple)):
        return tuple(int(v) for v in spec)
    text = str(spec).strip()
    if ":" in text:
        parts = text.split(":")
        if len(parts) not in (2, 3):
            raise InvalidConfig(f"bad range spec {text!r}, want 'lo:hi[:step]'")
        lo, hi = int(parts[0]), int(parts[1])
        step = int(parts[2]) if len(parts) == 3 else 1
        if step < 1 or hi < lo:
            raise InvalidConfig(f"bad range spec {text!r}")
        return tuple(range(lo, hi + 1, step))
    return tuple(int(v) for v in text.split(",") if v.strip())


@dataclass(frozen=True)
class RunConfig:
    inputs: tuple                 # ((path, label), ...)
    output_dir: str
    series_kind: str = "price"
    horizon_h: int = 1
    vol_windows_T: tuple = ()
    ma_windows_n: tuple = (30, 50, 100, 150, 200)
    n_min: int | None = None
    n_max: int | None = None
    risk_free_rate: float = 0.0
    seed: int = 0
    mean_denominator: str = "paper"
    price_column: str | int = 0
    delimiter: str = ","
    power_law_range: tuple | None = None

    def __post_init__(self):
        object.__setattr__(self, "inputs",
                           tuple((str(p), str(l)) for p, l in self.inputs))
        object.__setattr__(self, "vol_windows_T",
                           tuple(int(t) for t in self.vol_windows_T))
        object.__setattr__(self, "ma_windows_n",
                           parse_window_spec(self.ma_windows_n))

    def validate(self):
        if not self.inputs:
            raise InvalidConfig("no input series configured")
        labels = [label for _, label in self.inputs]
        if len(set(labels)) != len(labels):
            raise InvalidConfig(f"duplicate labels: {sorted(labels)}")
        if self.series_kind not in SERIES_KINDS:
            raise InvalidConfig(f"series_kind must be one of {SERIES_KINDS}")
        if self.horizon_h < 1:
            raise InvalidConfig("horizon_h must be >= 1")
        if self.series_kind != "price":
            if not self.vol_windows_T:
                raise InvalidConfig("volatility runs need at least one vol window")
            if min(self.vol_windows_T) < 2:
                raise InvalidConfig("volatility windows must be >= 2")
        windows = self.ma_windows_n
        if len(windows) < 2:
            raise InvalidConfig("need at least 2 moving-average windows for the index")
        if len(set(windows)) != len(windows) or list(windows) != sorted(windows):
            raise InvalidConfig("moving-average windows must be strictly increasing")
        if windows[0] < 2:
            raise InvalidConfig("moving-average windows must be >= 2")
        n_min, n_max = self.resolved_n_range()
        if n_min >= n_max:
            raise InvalidConfig(f"empty index range [{n_min}, {n_max}]")
        if self.mean_denominator not in MEAN_MODES:
            raise InvalidConfig(f"mean_denominator must be one of {MEAN_MODES}")
        if not self.output_dir:
            raise InvalidConfig("output_dir is required")

    def resolved_n_range(self):
        lo = self.n_min if self.n_min is not None else min(self.ma_windows_n)
        hi = self.n_max if self.n_max is not None else max(self.ma_windows_n)
        return int(lo), int(hi)

    def to_dict(self):
        d = asdict(self)
        d["inputs"] = [list(pair) for pair in self.inputs]
        d["vol_windows_T"] = list(self.vol_windows_T)
        d["ma_windows_n"] = list(self.ma_windows_n)
        if self.power_law_range is not None:
            d["power_law_range"] = list(self.power_law_range)
        return d

    @classmethod
    def from_dict(cls, d):
        d = dict(d)
        unknown = set(d) - {f for f in cls.__dataclass_fields__}
        if unknown:
            raise InvalidConfig(f"unknown config keys: {sorted(unknown)}")
        if "inputs" in d:
            d["inputs"] = tuple((p, l) for p, l in d["inputs"])
        if d.get("power_law_range") is not None:
            d["power_law_range"] = tuple(int(v) for v in d["power_law_range"])
        return cls(**d)


def parse_config_file(path):
    """Plain ``key = value`` file into a config dict.

    ``input`` may repeat, one ``path :: label`` per line (label optional).
    Window lists accept either comma lists or ``lo:hi:step`` range specs.
    ``#`` starts a comment.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise errors.FileUnreadable(f"{path}: {exc}") from exc
    if text.lstrip().startswith("{"):  # manifest or JSON config
        payload = json.loads(text)
        return dict(payload.get("config", payload))

    d = {}
    inputs = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise InvalidConfig(f"{path}:{lineno}: expected 'key = value'")
        key, value = (part.strip() for part in line.split("=", 1))
        if key == "input":
            if "::" in value:
                p, label = (part.strip() for part in value.split("::", 1))
            else:
                p, label = value, Path(value).stem
            inputs.append((p, label))
        else:
            d[key] = value
    if inputs:
        d["inputs"] = inputs

    for key in ("horizon_h", "n_min", "n_max", "seed"):
        if key in d:
            d[key] = int(d[key])
    if "risk_free_rate" in d:
        d["risk_free_rate"] = float(d["risk_free_rate"])
    for key in ("vol_windows_T", "ma_windows_n"):
        if key in d:
            d[key] = parse_window_spec(d[key])
    if "power_law_range" in d:
        d["power_law_range"] = tuple(parse_window_spec(d["power_law_range"]))
    if "price_column" in d:
        try:
            d["price_column"] = int(d["price_column"])
        except ValueError:
            pass
    return d


def config_from_manifest(path):
    """Rebuild the exact RunConfig a previous run recorded."""
    payload = json.loads(Path(path).read_text(encoding="utf-8"))
    if "config" not in payload:
        raise InvalidConfig(f"{path}: not a run manifest (no 'config' block)")
    return RunConfig.from_dict(payload["config"])


@dataclass
class RunResult:
    output_dir: Path
    digest: str
    mix_reports: dict  # vol window T (0 for price runs) -> MixReport
    sharpe: object
    files: tuple


# ---------------------------------------------------------------------------
# writers: all floats go through repr() so reruns are byte-identical
# ---------------------------------------------------------------------------

def _fmt(value):
    if isinstance(value, (np.floating, float)):
        return repr(float(value))
    return str(value)


def _write_tsv(path, header, rows):
    lines = ["\t".join(header)]
    lines.extend("\t".join(_fmt(cell) for cell in row) for row in rows)
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")


def _write_json(path, payload):
    path.parent.mkdir(parents=True, exist_ok=True)
    path.write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n",
                    encoding="utf-8")


def _digest_tree(root, exclude=("manifest.json",)):
    acc = hashlib.sha256()
    for p in sorted(root.rglob("*")):
        if p.is_file() and p.name not in exclude:
            acc.update(p.relative_to(root).as_posix().encode())
            acc.update(b"\0")
            acc.update(p.read_bytes())
    return acc.hexdigest()


def _analysis_series(config):
    """Load, align and transform the inputs into the series to partition.

    Returns (ordered labels, {(label, T) -> value array}). T == 0 stands for
    raw prices, and the prices are returned too for the Sharpe benchmark.
    """
    series = [load_series(path, label=label, price_column=config.price_column,
                          delimiter=config.delimiter)
              for path, label in config.inputs]
    series = truncate_to_common_length(series)
    labels = [s.label for s in series]

    jobs = {}
    if config.series_kind == "price":
        for s in series:
            jobs[(s.label, 0)] = s.values
    else:
        make_returns = linear_returns if config.series_kind == "volatility_linear" else log_returns
        for s in series:
            rets = make_returns(s, config.horizon_h)
            for T in config.vol_windows_T:
                jobs[(s.label, T)] = rolling_volatility(
                    rets, T, config.mean_denominator).values
    return labels, jobs, series


def _entropy_job(x, n, power_law_range):
    """One (series, T, n) cell: partition, distribution, curve, fits."""
    part = detect_clusters(x, n)
    dist = duration_distribution(part)
    curve = entropy_curve(dist)

    def attempt(fit, *args, **kwargs):
        try:
            return fit(*args, **kwargs), None
        except InsufficientSupport as exc:
            return None, str(exc)

    plaw, plaw_reason = attempt(fit_power_law, dist, power_law_range)
    model, model_reason = attempt(fit_entropy_model, curve)
    return {
        "dist": dist,
        "curve": curve,
        "hmix": hmix(curve),
        "power_law": plaw,
        "power_law_skipped": plaw_reason,
        "entropy_model": model,
        "entropy_model_skipped": model_reason,
    }


def _write_job(root, label, T, n, result):
    cell = root / label / f"T{T}" / f"n{n}"
    dist, curve = result["dist"], result["curve"]
    _write_tsv(cell / "distribution.tsv",
               ("tau", "count", "P", "S"),
               zip(dist.support, dist.counts, dist.probabilities, curve.values))
    _write_tsv(cell / "entropy.tsv", ("tau", "S"), zip(curve.support, curve.values))

    plaw, model = result["power_law"], result["entropy_model"]
    _write_json(cell / "summary.json", {
        "label": label,
        "vol_window_T": T,
        "window_n": n,
        "cluster_count": dist.total_count,
        "tau_min": int(dist.support[0]),
        "tau_max": int(dist.support[-1]),
        "scalar_entropy": curve.scalar,
        "hmix": result["hmix"],
        "power_law": None if plaw is None else {
            "alpha": plaw.alpha,
            "fit_range": list(plaw.fit_range),
            "residual": plaw.residual,
            "n_points": plaw.n_points,
        },
        "power_law_skipped": result["power_law_skipped"],
        "entropy_model": None if model is None else {
            "s0": model.s0, "alpha": model.alpha,
            "inv_n": model.inv_n, "residual": model.residual,
        },
        "entropy_model_skipped": result["entropy_model_skipped"],
    })


def run_pipeline(config, jobs=1):
    """Execute the full analysis described by ``config``.

    The (series x T x n) grid may run with bounded parallelism (``jobs``);
    outputs are reduced and written in a fixed order so the bytes on disk do
    not depend on scheduling. On any failure the staging directory is
    removed and the target directory is left untouched.
    """
    config.validate()
    out_dir = Path(config.output_dir)
    if out_dir.exists() and any(out_dir.iterdir()):
        raise InvalidConfig(f"output directory {out_dir} exists and is not empty")

    labels, grid, price_series = _analysis_series(config)
    shortest = min(v.size for v in grid.values())
    if max(config.ma_windows_n) >= shortest:
        raise InvalidConfig(
            f"largest moving-average window {max(config.ma_windows_n)} does not fit "
            f"the shortest analyzed series (length {shortest})")

    cells = [(label, T, n) for (label, T) in grid for n in config.ma_windows_n]

    def compute(cell):
        label, T, n = cell
        return cell, _entropy_job(grid[(label, T)], n, config.power_law_range)

    if jobs > 1:
        with concurrent.futures.ThreadPoolExecutor(max_workers=jobs) as pool:
            results = dict(pool.map(compute, cells))
    else:
        results = dict(map(compute, cells))

    out_dir.parent.mkdir(parents=True, exist_ok=True)
    staging = Path(tempfile.mkdtemp(prefix=out_dir.name + ".stage-", dir=out_dir.parent))
    try:
        for cell in cells:  # fixed order: input order, then T, then n
            _write_job(staging, *cell, results[cell])

        vol_windows = sorted({T for _, T in grid})
        n_min, n_max = config.resolved_n_range()
        mix_reports = {}
        for T in vol_windows:
            curves = []
            for label in labels:
                per_n = [results[(label, T, n)] for n in config.ma_windows_n]
                curve = HMixCurve(
                    label=label,
                    windows=np.asarray(config.ma_windows_n),
                    values=np.array([r["hmix"] for r in per_n]),
                    tau_max=np.array([int(r["dist"].support[-1]) for r in per_n]),
                )
                curves.append(curve)
                _write_tsv(staging / label / f"T{T}" / "hmix.tsv",
                           ("n", "hmix", "tau_min", "tau_max", "clusters", "scalar_entropy"),
                           [(n, r["hmix"], int(r["dist"].support[0]),
                             int(r["dist"].support[-1]), r["dist"].total_count,
                             r["curve"].scalar)
                            for n, r in zip(config.ma_windows_n, per_n)])
            report = build_mix_report(curves, n_min, n_max)
            mix_reports[T] = report
            payload = report.to_dict()
            payload["series_kind"] = config.series_kind
            payload["vol_window_T"] = T
            payload["mean_denominator"] = config.mean_denominator
            payload["tau_max"] = {c.label: [int(v) for v in c.tau_max] for c in curves}
            _write_json(staging / f"mix_T{T}.json", payload)

        # Sharpe benchmark on the aligned return panel
        make_returns = log_returns if config.series_kind == "volatility_log" else linear_returns
        panel = AssetPanel(
            labels=tuple(labels),
            returns_matrix=np.column_stack(
                [make_returns(s, config.horizon_h).values for s in price_series]),
        )
        solution = maximize_sharpe(panel_stats(panel), config.risk_free_rate,
                                   seed=config.seed)
        _write_json(staging / "sharpe.json", solution.to_dict(labels=labels))

        for T in vol_windows:
            report = mix_reports[T]
            _write_tsv(staging / f"weights_T{T}.tsv",
                       ("label", "mix_weight", "sharpe_weight"),
                       [(label, w_mix, w_sr)
                        for label, w_mix, w_sr
                        in zip(labels, report.weights, solution.weights)])

        from . import __version__

        digest = _digest_tree(staging)
        _write_json(staging / "manifest.json", {
            "engine": "mixentropy",
            "engine_version": __version__,
            "config": config.to_dict(),
            "decision_modes": dict(DECISION_MODES,
                                   mean_denominator=config.mean_denominator,
                                   power_law_range=(
                                       "[2, n/2]" if config.power_law_range is None
                                       else list(config.power_law_range))),
            "content_digest": digest,
            "files": [p.relative_to(staging).as_posix()
                      for p in sorted(staging.rglob("*")) if p.is_file()],
        })
    except BaseException:
        shutil.rmtree(staging, ignore_errors=True)
        raise

    if out_dir.exists():
        out_dir.rmdir()  # verified empty above
    staging.replace(out_dir)
    return RunResult(
        output_dir=out_dir,
        digest=digest,
        mix_reports=mix_reports,
        sharpe=solution,
        files=tuple(p.relative_to(out_dir).as_posix()
                    for p in sorted(out_dir.rglob("*")) if p.is_file()),
    )
