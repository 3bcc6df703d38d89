"""Moving-average cluster entropy for uniformly sampled series.

The pipeline: partition a series by its intersections with a trailing
moving average, histogram the cluster durations, read off the information
curve S(tau, n) = -log P(tau, n), integrate it into a per-window index and
then into one scalar heterogeneity index per series, and turn the rescaled
indexes into allocation weights. A Sharpe-ratio maximizer provides the
conventional benchmark, and exact-covariance fractional Brownian motion
provides the validation oracle.
"""

__version__ = "0.1.0"

from .entropy import (
    DurationDistribution,
    EntropyCurve,
    EntropyModelFit,
    PowerLawFit,
    default_power_law_range,
    duration_distribution,
    entropy_curve,
    fit_entropy_model,
    fit_power_law,
)
from .errors import MixentropyError
from .heterogeneity import (
    HMixCurve,
    MixReport,
    build_mix_report,
    hmix,
    mix,
    mix_weights,
    rescale_mix,
)
from .ingest import PriceSeries, load_series, truncate_to_common_length, write_series
from .partition import (
    FULL_MA_SWEEP,
    ClusterPartition,
    MovingAverageSeries,
    detect_clusters,
    moving_average,
)
from .pipeline import RunConfig, RunResult, config_from_manifest, run_pipeline
from .portfolio import (
    AssetPanel,
    SharpeSolution,
    maximize_sharpe,
    panel_stats,
    sharpe_ratio,
)
from .preprocess import (
    DEFAULT_VOL_WINDOWS,
    ReturnSeries,
    VolatilitySeries,
    linear_returns,
    log_returns,
    rolling_volatility,
)
from .synthetic import (
    FbmSpec,
    dyadic_scales,
    estimate_hurst_variance_method,
    generate_fbm,
)

__all__ = [
    "AssetPanel",
    "ClusterPartition",
    "DEFAULT_VOL_WINDOWS",
    "DurationDistribution",
    "EntropyCurve",
    "EntropyModelFit",
    "FULL_MA_SWEEP",
    "FbmSpec",
    "HMixCurve",
    "MixReport",
    "MixentropyError",
    "MovingAverageSeries",
    "PowerLawFit",
    "PriceSeries",
    "ReturnSeries",
    "RunConfig",
    "RunResult",
    "SharpeSolution",
    "VolatilitySeries",
    "build_mix_report",
    "config_from_manifest",
    "default_power_law_range",
    "detect_clusters",
    "duration_distribution",
    "dyadic_scales",
    "entropy_curve",
    "estimate_hurst_variance_method",
    "fit_entropy_model",
    "fit_power_law",
    "generate_fbm",
    "hmix",
    "linear_returns",
    "load_series",
    "log_returns",
    "maximize_sharpe",
    "mix",
    "mix_weights",
    "moving_average",
    "panel_stats",
    "rescale_mix",
    "rolling_volatility",
    "run_pipeline",
    "sharpe_ratio",
    "truncate_to_common_length",
    "write_series",
]
