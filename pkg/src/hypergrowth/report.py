"""Report assembly: JSON payloads, long-CSV emission, chart building.

Everything here is deterministic: dict key order is fixed by
construction, floats serialize through ``json`` (shortest round-trip
repr), and non-finite numbers become JSON null so the output is always
strict JSON.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass

from . import __version__
from .divergence import DivergenceReport, detect_divergence
from .errors import ParseError
from .fitting import (
    FitResult,
    WEIGHTING_UNIFORM,
    fit_hyperbolic,
)
from .model import (
    ExponentialParams,
    HyperbolicParams,
    eval_hyperbolic,
    reciprocal_line,
    singularity_time,
)
from .regimes import RegimeSpec, RegimeTestResult, test_regimes
from .series import TimeSeries, WindowSpec, slice_series
from .svgchart import ChartSeries, render_chart

__all__ = [
    "AnalysisReport",
    "build_analysis_report",
    "emit_long_csv",
    "build_plot",
    "PLOT_KINDS",
    "to_json_text",
    "fit_to_json",
    "divergence_to_json",
    "regimes_to_json",
    "analysis_report_to_json",
    "window_to_json",
]

PLOT_KINDS = ("semilog", "reciprocal", "reciprocal-tail")

DATA_COLOR = "#1f5fa8"
FIT_COLOR = "#c0392b"


@dataclass(frozen=True)
class AnalysisReport:
    """One-stop result bundle for a series: trend fit, divergence scan,
    regime test, and enough metadata to reproduce the run."""

    label: str
    unit: str
    fit: FitResult
    singularity_year: float
    divergence: DivergenceReport
    regime_test: RegimeTestResult
    tool_version: str
    input_digest: str  # sha256 of the raw input bytes


def build_analysis_report(
    series: TimeSeries,
    input_bytes: bytes,
    fit_window: WindowSpec,
    weighting: str = WEIGHTING_UNIFORM,
    threshold_sigma: float = 2.5,
    consecutive_required: int = 2,
    regime_spec: RegimeSpec | None = None,
    alpha: float = 0.01,
) -> AnalysisReport:
    """Run the full pipeline with the fit window doubling as the
    divergence anchor and the regime-test window."""
    fit = fit_hyperbolic(series, fit_window, weighting)
    divergence = detect_divergence(
        series, fit_window, threshold_sigma, consecutive_required
    )
    regime_test = test_regimes(
        series, regime_spec if regime_spec is not None else RegimeSpec(),
        fit_window, alpha,
    )
    return AnalysisReport(
        label=series.label,
        unit=series.unit,
        fit=fit,
        singularity_year=singularity_time(fit.params),
        divergence=divergence,
        regime_test=regime_test,
        tool_version=__version__,
        input_digest=hashlib.sha256(input_bytes).hexdigest(),
    )


# ──────────────────────────────────────────────────────────────────────
# CSV emission
# ──────────────────────────────────────────────────────────────────────

def emit_long_csv(series: TimeSeries) -> str:
    """Serialize to the long layout at 12 significant digits.

    parse_long_csv of the result restores every year and value to that
    precision; an empty series emits the header only.
    """
    lines = ["year,gdp"]
    for y, v in zip(series.years, series.values):
        lines.append(f"{y:.12g},{v:.12g}")
    return "\n".join(lines) + "\n"


# ──────────────────────────────────────────────────────────────────────
# JSON payloads
# ──────────────────────────────────────────────────────────────────────

def _jf(x: float | None) -> float | None:
    """Floats for JSON: non-finite values have no strict-JSON encoding
    and are reported as null."""
    if x is None or not math.isfinite(x):
        return None
    return float(x)


def window_to_json(window: WindowSpec) -> dict:
    return {"from": _jf(window.t_min), "to": _jf(window.t_max)}


def _params_to_json(params: HyperbolicParams | ExponentialParams) -> dict:
    if isinstance(params, HyperbolicParams):
        return {"a": _jf(params.a), "k": _jf(params.k)}
    return {"s0": _jf(params.s0), "r": _jf(params.r), "t_ref": _jf(params.t_ref)}


def fit_to_json(fit: FitResult, include_residuals: bool = False) -> dict:
    payload = {
        "model": fit.model,
        "weighting": fit.weighting,
        "window": window_to_json(fit.window),
        "n": fit.n,
        **_params_to_json(fit.params),
        "rmse_transformed": _jf(fit.rmse_transformed),
        "r_squared_transformed": _jf(fit.r_squared_transformed),
        "sse_raw": _jf(fit.sse_raw),
    }
    if include_residuals:
        payload["residuals"] = [
            {"year": _jf(y), "residual": _jf(e)} for y, e in fit.residuals
        ]
    return payload


def divergence_to_json(report: DivergenceReport) -> dict:
    return {
        "anchor_window": window_to_json(report.anchor_window),
        "threshold_sigma": _jf(report.threshold_sigma),
        "consecutive_required": report.consecutive_required,
        "anchor_n": report.anchor_n,
        "anchor_fit": fit_to_json(report.anchor_fit),
        "exact_anchor": report.exact_anchor,
        "onset_year": _jf(report.onset_year),
        "direction": report.direction,
        "evidence": [
            {"year": _jf(y), "standardized_residual": _jf(r)}
            for y, r in report.evidence
        ],
    }


def regimes_to_json(result: RegimeTestResult) -> dict:
    fits_by_window = {fit.window: fit for fit in result.segmented_fits}
    segments = []
    for seg in result.segments:
        fit = fits_by_window.get(seg.window)
        segments.append(
            {
                "label": seg.label,
                "window": window_to_json(seg.window),
                "n": seg.n,
                "fit": fit_to_json(fit) if fit is not None else None,
            }
        )
    return {
        "window": window_to_json(result.window),
        "alpha": _jf(result.alpha),
        "boundaries": [_jf(b) for b in result.spec.boundaries],
        "n": result.n,
        "verdict": result.verdict,
        "f_statistic": _jf(result.f_statistic),
        "f_critical": _jf(result.f_critical),
        "sse_single": _jf(result.sse_single),
        "sse_segmented": _jf(result.sse_segmented),
        "aic_single": _jf(result.aic_single),
        "aic_segmented": _jf(result.aic_segmented),
        "single_fit": (
            fit_to_json(result.single_fit) if result.single_fit is not None else None
        ),
        "segments": segments,
    }


def analysis_report_to_json(report: AnalysisReport) -> dict:
    return {
        "label": report.label,
        "unit": report.unit,
        "tool_version": report.tool_version,
        "input_digest": report.input_digest,
        "fit": fit_to_json(report.fit),
        "singularity_year": _jf(report.singularity_year),
        "divergence": divergence_to_json(report.divergence),
        "regime_test": regimes_to_json(report.regime_test),
    }


def to_json_text(payload: dict) -> str:
    return json.dumps(payload, indent=2, allow_nan=False) + "\n"


# ──────────────────────────────────────────────────────────────────────
# Charts
# ──────────────────────────────────────────────────────────────────────

def _overlay_points(
    kind: str, years: tuple[float, ...], fit: FitResult
) -> tuple[tuple[float, float], ...]:
    """Fitted-curve coordinates sampled at each plotted data year.

    On the raw scale the curve only exists up to the blow-up year, so
    later years are omitted there; the reciprocal line is total.
    """
    params = fit.params
    if kind == "semilog":
        return tuple(
            (y, eval_hyperbolic(params, y))
            for y in years
            if reciprocal_line(params, y) > 0.0
        )
    return tuple((y, reciprocal_line(params, y)) for y in years)


def build_plot(
    series: TimeSeries,
    kind: str,
    window: WindowSpec = WindowSpec(),
    fit: FitResult | None = None,
    boundaries: tuple[float, ...] = (),
) -> tuple[str, str]:
    """Return (svg_text, sidecar_csv_text) for one chart.

    Kinds: ``semilog`` (raw values, log10 y-axis), ``reciprocal``
    (1/value, linear axes), ``reciprocal-tail`` (same, meant for a
    windowed close-up).  The sidecar lists every plotted coordinate at
    full precision, one row per point, plus one row per boundary rule.
    """
    if kind not in PLOT_KINDS:
        raise ValueError(f"unknown plot kind {kind!r}; expected one of {PLOT_KINDS}")
    sliced = slice_series(series, window)
    if len(sliced) == 0:
        raise ParseError("nothing to plot: the window selects no points")

    label = sliced.label or "series"
    if kind == "semilog":
        data_pts = tuple(zip(sliced.years, sliced.values))
        y_label = sliced.unit or "value"
        y_log10 = True
        include_zero = False
        data_name = label
    else:
        data_pts = tuple((y, 1.0 / v) for y, v in zip(sliced.years, sliced.values))
        y_label = f"1/({sliced.unit})" if sliced.unit else "reciprocal value"
        y_log10 = False
        include_zero = True
        data_name = f"1/{label}" if label else "reciprocal"

    chart_series = [
        ChartSeries(
            name=data_name,
            points=data_pts,
            color=DATA_COLOR,
            markers=True,
        )
    ]
    fit_pts: tuple[tuple[float, float], ...] = ()
    if fit is not None:
        fit_pts = _overlay_points(kind, sliced.years, fit)
        chart_series.append(
            ChartSeries(
                name="fitted trajectory",
                points=fit_pts,
                color=FIT_COLOR,
                dashed=True,
                in_range=False,
            )
        )

    titles = {
        "semilog": f"{label}: growth trajectory (log scale)",
        "reciprocal": f"{label}: reciprocal values",
        "reciprocal-tail": f"{label}: reciprocal values, window close-up",
    }
    svg = render_chart(
        title=titles[kind],
        x_label="year",
        y_label=y_label,
        series=tuple(chart_series),
        vrules=tuple(boundaries),
        y_log10=y_log10,
        y_include_zero=include_zero,
    )

    rows = ["series,year,value"]
    for y, v in data_pts:
        rows.append(f"data,{y!r},{v!r}")
    for y, v in fit_pts:
        rows.append(f"fit,{y!r},{v!r}")
    for b in boundaries:
        rows.append(f"boundary,{b!r},")
    sidecar = "\n".join(rows) + "\n"
    return svg, sidecar
