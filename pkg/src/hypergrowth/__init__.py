"""Hyperbolic growth-trend analysis for long-run annual series.

The package fits escape trajectories S(t) = 1/(a - k*t) by straight-line
least squares on reciprocal values, locates the year a series leaves its
fitted trajectory, tests hypothesized regime boundaries against a
single-line null, and renders deterministic SVG charts.
"""

__version__ = "0.1.0"

from .errors import (
    FitError,
    HypergrowthError,
    InsufficientDataError,
    NoSingularityError,
    NonGrowingSeriesError,
    ParseError,
    PathologicalFitError,
    SingularityError,
)
from .series import (
    FULL_WINDOW,
    TimeSeries,
    WindowSpec,
    parse_long_csv,
    parse_wide_csv,
    slice_series,
)
from .model import (
    ExponentialParams,
    HyperbolicParams,
    eval_exponential,
    eval_hyperbolic,
    reciprocal_line,
    reciprocal_series,
    singularity_time,
)
from .fitting import (
    FitResult,
    GoodnessReport,
    WEIGHTING_UNIFORM,
    WEIGHTING_VALUE_SQUARED,
    fit_exponential,
    fit_hyperbolic,
    goodness_report,
)
from .divergence import (
    ACCELERATION,
    DECELERATION,
    NO_DIVERGENCE,
    AnchorScanEntry,
    DivergenceReport,
    detect_divergence,
    scan_anchor_end,
)
from .regimes import (
    INSUFFICIENT_DATA,
    SEGMENTATION_NOT_SUPPORTED,
    SEGMENTATION_SUPPORTED,
    RegimeSegment,
    RegimeSpec,
    RegimeTestResult,
    annotate_regimes,
    test_regimes,
)
from .report import (
    AnalysisReport,
    analysis_report_to_json,
    build_analysis_report,
    build_plot,
    divergence_to_json,
    emit_long_csv,
    fit_to_json,
    regimes_to_json,
    to_json_text,
    window_to_json,
)

__all__ = [
    "__version__",
    "HypergrowthError",
    "ParseError",
    "FitError",
    "InsufficientDataError",
    "NonGrowingSeriesError",
    "PathologicalFitError",
    "SingularityError",
    "NoSingularityError",
    "TimeSeries",
    "WindowSpec",
    "FULL_WINDOW",
    "parse_long_csv",
    "parse_wide_csv",
    "slice_series",
    "HyperbolicParams",
    "ExponentialParams",
    "eval_hyperbolic",
    "eval_exponential",
    "reciprocal_line",
    "reciprocal_series",
    "singularity_time",
    "FitResult",
    "GoodnessReport",
    "fit_hyperbolic",
    "fit_exponential",
    "goodness_report",
    "WEIGHTING_UNIFORM",
    "WEIGHTING_VALUE_SQUARED",
    "DivergenceReport",
    "AnchorScanEntry",
    "detect_divergence",
    "scan_anchor_end",
    "DECELERATION",
    "ACCELERATION",
    "NO_DIVERGENCE",
    "RegimeSpec",
    "RegimeSegment",
    "RegimeTestResult",
    "test_regimes",
    "annotate_regimes",
    "SEGMENTATION_SUPPORTED",
    "SEGMENTATION_NOT_SUPPORTED",
    "INSUFFICIENT_DATA",
    "AnalysisReport",
    "build_analysis_report",
    "emit_long_csv",
    "build_plot",
    "analysis_report_to_json",
    "fit_to_json",
    "divergence_to_json",
    "regimes_to_json",
    "window_to_json",
    "to_json_text",
]
