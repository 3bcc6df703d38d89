"""Command line: synthetic path generation, input validation, the analysis
pipeline, index/weight recomputation and report assembly.

Exit codes: 0 on success, otherwise the ``exit_code`` of the error class
that stopped the run (see errors.py; the full table is in the README).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .errors import InvalidConfig, MixentropyError
from .heterogeneity import HMixCurve, build_mix_report
from .ingest import load_series, truncate_to_common_length, write_series
from .pipeline import (
    RunConfig,
    config_from_manifest,
    parse_config_file,
    parse_window_spec,
    run_pipeline,
)
from .portfolio import AssetPanel, maximize_sharpe, panel_stats
from .preprocess import linear_returns, log_returns
from .synthetic import FbmSpec, generate_fbm

OUTPUT_DIR_ENV = "MIXENTROPY_OUT"


def _parse_inputs(raw_inputs, raw_labels):
    """Pair --input values with labels: inline 'path=label' wins, then the
    positionally matching --label, then the file stem."""
    inputs = []
    labels = list(raw_labels or [])
    for i, spec in enumerate(raw_inputs or []):
        if "=" in spec:
            path, _, label = spec.rpartition("=")
        else:
            path = spec
            label = labels[i] if i < len(labels) else Path(spec).stem
        inputs.append((path, label))
    return inputs


def _add_input_flags(parser):
    parser.add_argument("--input", action="append", metavar="PATH[=LABEL]",
                        help="input series file; may repeat")
    parser.add_argument("--label", action="append",
                        help="label for the matching --input; may repeat")
    parser.add_argument("--price-column", default=None,
                        help="price column, by index or header name (default 0)")
    parser.add_argument("--delimiter", default=None, help="field delimiter (default ',')")


def build_parser():
    parser = argparse.ArgumentParser(
        prog="mixentropy",
        description="Moving-average cluster entropy and heterogeneity-index analysis.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest-check", help="load and validate input files")
    _add_input_flags(p)

    synth = sub.add_parser("synth", help="generate synthetic series")
    synth_sub = synth.add_subparsers(dest="synth_kind", required=True)
    p = synth_sub.add_parser("fbm", help="self-affine path with exact increment covariance")
    p.add_argument("--hurst", type=float, required=True)
    p.add_argument("--length", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)
    p.add_argument("--level", type=float, default=100.0,
                   help="positive price level the zero-start path is shifted to")

    p = sub.add_parser("analyze", help="run the full pipeline")
    _add_input_flags(p)
    p.add_argument("--config", help="key = value config file (flags win)")
    p.add_argument("--from-manifest", help="rerun the exact config a manifest records")
    p.add_argument("--series-kind", choices=("price", "volatility_linear", "volatility_log"))
    p.add_argument("--return-kind", choices=("linear", "log"),
                   help="shorthand: forces volatility_<kind> when analyzing volatility")
    p.add_argument("--horizon", type=int, help="return horizon in steps")
    p.add_argument("--vol-window", action="append", type=int,
                   help="volatility window T; may repeat")
    p.add_argument("--ma-window", action="append",
                   help="moving-average window list '30,50' or range '5:1500:5'; may repeat")
    p.add_argument("--n-min", type=int, help="lower window bound for the scalar index")
    p.add_argument("--n-max", type=int, help="upper window bound for the scalar index")
    p.add_argument("--mean-denominator", choices=("paper", "standard"))
    p.add_argument("--risk-free-rate", type=float)
    p.add_argument("--seed", type=int)
    p.add_argument("--output-dir", help=f"run directory (default ${OUTPUT_DIR_ENV})")
    p.add_argument("--jobs", type=int, default=1, help="parallel grid jobs")

    p = sub.add_parser("mix", help="recompute the cross-series index from a run directory")
    p.add_argument("--run-dir", required=True)
    p.add_argument("--n-min", type=int)
    p.add_argument("--n-max", type=int)
    p.add_argument("--out", help="write JSON here instead of stdout")

    p = sub.add_parser("sharpe", help="Sharpe benchmark weights for the input panel")
    _add_input_flags(p)
    p.add_argument("--return-kind", choices=("linear", "log"), default="linear")
    p.add_argument("--horizon", type=int, default=1)
    p.add_argument("--risk-free-rate", type=float, default=0.0)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", help="write JSON here instead of stdout")

    p = sub.add_parser("report", help="summarize a finished run directory")
    p.add_argument("--run-dir", required=True)

    return parser


def _cmd_ingest_check(args):
    inputs = _parse_inputs(args.input, args.label)
    if not inputs:
        raise InvalidConfig("ingest-check needs at least one --input")
    column = args.price_column if args.price_column is not None else 0
    try:
        column = int(column)
    except (TypeError, ValueError):
        pass
    for path, label in inputs:
        series = load_series(path, label=label, price_column=column,
                             delimiter=args.delimiter or ",")
        print(f"{series.label}\trows={len(series)}\tmin={series.values.min():.6g}"
              f"\tmax={series.values.max():.6g}")
    return 0


def _cmd_synth_fbm(args):
    if args.level <= 0:
        raise InvalidConfig("--level must be positive so the output is a valid price file")
    path = generate_fbm(FbmSpec(args.hurst, args.length, args.seed))
    scale = max(1.0, np.abs(path).max())
    # shift the zero-start path onto a strictly positive price level; the
    # partition is affine-invariant, so this changes nothing downstream
    prices = args.level * (1.0 + path / (4.0 * scale))
    write_series(prices, args.out)
    print(f"wrote {args.length} samples to {args.out}")
    return 0


def _build_run_config(args):
    if args.from_manifest:
        config = config_from_manifest(args.from_manifest)
        if args.output_dir:  # rerun side by side with the original
            config = dataclasses.replace(config, output_dir=args.output_dir)
        return config
    d = parse_config_file(args.config) if args.config else {}

    inputs = _parse_inputs(args.input, args.label)
    if inputs:
        d["inputs"] = inputs
    if args.series_kind:
        d["series_kind"] = args.series_kind
    if args.return_kind and str(d.get("series_kind", "price")).startswith("volatility"):
        d["series_kind"] = ("volatility_log" if args.return_kind == "log"
                            else "volatility_linear")
    if args.horizon is not None:
        d["horizon_h"] = args.horizon
    if args.vol_window:
        d["vol_windows_T"] = tuple(args.vol_window)
    if args.ma_window:
        windows = []
        for spec in args.ma_window:
            windows.extend(parse_window_spec(spec))
        d["ma_windows_n"] = tuple(sorted(set(windows)))
    if args.n_min is not None:
        d["n_min"] = args.n_min
    if args.n_max is not None:
        d["n_max"] = args.n_max
    if args.mean_denominator:
        d["mean_denominator"] = args.mean_denominator
    if args.risk_free_rate is not None:
        d["risk_free_rate"] = args.risk_free_rate
    if args.seed is not None:
        d["seed"] = args.seed
    if args.price_column is not None:
        try:
            d["price_column"] = int(args.price_column)
        except ValueError:
            d["price_column"] = args.price_column
    if args.delimiter is not None:
        d["delimiter"] = args.delimiter
    if args.output_dir:
        d["output_dir"] = args.output_dir
    elif not d.get("output_dir"):
        d["output_dir"] = os.environ.get(OUTPUT_DIR_ENV, "")

    if "inputs" not in d or not d["inputs"]:
        raise InvalidConfig("no inputs: give --input or a config file with input lines")
    if not d.get("output_dir"):
        raise InvalidConfig(f"no output dir: give --output-dir, a config entry, "
                            f"or set ${OUTPUT_DIR_ENV}")
    return RunConfig.from_dict(d)


def _cmd_analyze(args):
    result = run_pipeline(_build_run_config(args), jobs=max(1, args.jobs))
    print(f"run complete: {result.output_dir}")
    print(f"content digest: {result.digest}")
    for T, report in sorted(result.mix_reports.items()):
        pairs = ", ".join(f"{label}={value:.4g}"
                          for label, value in zip(report.labels, report.rescaled_mix))
        print(f"T={T}: rescaled mix {pairs}")
    return 0


def _read_hmix_tables(run_dir):
    run_dir = Path(run_dir)
    manifest = json.loads((run_dir / "manifest.json").read_text(encoding="utf-8"))
    config = RunConfig.from_dict(manifest["config"])
    labels = [label for _, label in config.inputs]
    tables = {}
    for label in labels:
        for t_dir in sorted((run_dir / label).glob("T*")):
            T = int(t_dir.name[1:])
            rows = [line.split("\t") for line
                    in (t_dir / "hmix.tsv").read_text(encoding="utf-8").splitlines()[1:]]
            windows = [int(r[0]) for r in rows]
            values = [float(r[1]) for r in rows]
            tables.setdefault(T, []).append(HMixCurve(label, windows, values))
    return config, tables


def _cmd_mix(args):
    config, tables = _read_hmix_tables(args.run_dir)
    n_min, n_max = config.resolved_n_range()
    if args.n_min is not None:
        n_min = args.n_min
    if args.n_max is not None:
        n_max = args.n_max
    payload = {}
    for T, curves in sorted(tables.items()):
        report = build_mix_report(curves, n_min, n_max)
        payload[f"T{T}"] = report.to_dict()
    text = json.dumps(payload, indent=2, sort_keys=True)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    return 0


def _cmd_sharpe(args):
    inputs = _parse_inputs(args.input, args.label)
    if not inputs:
        raise InvalidConfig("sharpe needs at least one --input")
    column = args.price_column if args.price_column is not None else 0
    try:
        column = int(column)
    except (TypeError, ValueError):
        pass
    series = [load_series(path, label=label, price_column=column,
                          delimiter=args.delimiter or ",")
              for path, label in inputs]
    series = truncate_to_common_length(series)
    make_returns = log_returns if args.return_kind == "log" else linear_returns
    panel = AssetPanel(
        labels=tuple(s.label for s in series),
        returns_matrix=np.column_stack(
            [make_returns(s, args.horizon).values for s in series]),
    )
    solution = maximize_sharpe(panel_stats(panel), args.risk_free_rate, seed=args.seed)
    text = json.dumps(solution.to_dict(labels=[s.label for s in series]),
                      indent=2, sort_keys=True)
    if args.out:
        Path(args.out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)
    return 0


def _cmd_report(args):
    run_dir = Path(args.run_dir)
    manifest = json.loads((run_dir / "manifest.json").read_text(encoding="utf-8"))
    sharpe = json.loads((run_dir / "sharpe.json").read_text(encoding="utf-8"))
    print(f"run: {run_dir}")
    print(f"series kind: {manifest['config']['series_kind']}   "
          f"digest: {manifest['content_digest'][:16]}...")
    for mix_file in sorted(run_dir.glob("mix_T*.json")):
        payload = json.loads(mix_file.read_text(encoding="utf-8"))
        T = payload["vol_window_T"]
        print(f"\nT={T}  (index over n in {payload['n_range']})")
        print(f"{'label':<16}{'raw':>14}{'rescaled':>10}{'weight':>9}{'sharpe_w':>10}")
        for i, label in enumerate(payload["labels"]):
            sharpe_w = sharpe["weights"][sharpe["labels"].index(label)]
            print(f"{label:<16}{payload['raw_mix'][i]:>14.6g}"
                  f"{payload['rescaled_mix'][i]:>10.4f}"
                  f"{payload['weights'][i]:>9.4f}{sharpe_w:>10.4f}")
    if sharpe.get("degenerate"):
        print("\nnote: no asset beat the risk-free rate; "
              "Sharpe weights are the minimum-variance point")
    return 0


_COMMANDS = {
    "ingest-check": _cmd_ingest_check,
    "analyze": _cmd_analyze,
    "mix": _cmd_mix,
    "sharpe": _cmd_sharpe,
    "report": _cmd_report,
}


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        if args.command == "synth":
            return _cmd_synth_fbm(args)
        return _COMMANDS[args.command](args)
    except MixentropyError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return exc.exit_code


if __name__ == "__main__":
    sys.exit(main())
