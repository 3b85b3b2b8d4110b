"""Estimation of the growth laws by straight-line least squares.

The escaping trajectory S(t) = 1/(a - k*t) is estimated on the
reciprocal scale, where it is the line 1/S = a - k*t: weighted ordinary
least squares of 1/S on the year gives -k as slope and a as intercept.
Years are centered on their mean internally for conditioning; the
reported (a, k) always refer to raw calendar years.

Two weightings are supported:

* ``uniform``: every point counts equally (the default);
* ``value_squared``: weights S_i**4, which makes reciprocal-space least
  squares agree to first order with least squares on the raw values
  (d(1/S) = -dS/S**2, so squared errors pick up a factor S**-4).

The comparison exponential S(t) = s0*exp(r*(t - t_ref)) is estimated the
same way on the log scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import (
    InsufficientDataError,
    NonGrowingSeriesError,
    PathologicalFitError,
)
from .model import ExponentialParams, HyperbolicParams, eval_exponential, eval_hyperbolic
from .series import FULL_WINDOW, TimeSeries, WindowSpec, slice_series

__all__ = [
    "FitResult",
    "GoodnessReport",
    "fit_hyperbolic",
    "fit_exponential",
    "goodness_report",
    "WEIGHTING_UNIFORM",
    "WEIGHTING_VALUE_SQUARED",
]

WEIGHTING_UNIFORM = "uniform"
WEIGHTING_VALUE_SQUARED = "value_squared"
MIN_POINTS = 3

# Relative scale below which a residual sum is indistinguishable from
# round-off of an exact fit.
_EXACT_REL = 1e-12


@dataclass(frozen=True)
class FitResult:
    params: HyperbolicParams | ExponentialParams
    model: str                    # "hyperbolic" or "exponential"
    window: WindowSpec            # window that was applied to the input
    n: int
    rmse_transformed: float       # RMS residual in the fitting space
    r_squared_transformed: float  # coefficient of determination, fitting space
    residuals: tuple[tuple[float, float], ...]  # (year, fitting-space residual)
    sse_raw: float                # sum of squared errors on the raw values
    weighting: str = WEIGHTING_UNIFORM

    def __post_init__(self):
        if self.n < MIN_POINTS:
            raise ValueError(f"a reported fit needs n >= {MIN_POINTS}, got {self.n}")
        if len(self.residuals) != self.n:
            raise ValueError(
                f"residual count {len(self.residuals)} does not match n = {self.n}"
            )
        if not 0.0 <= self.r_squared_transformed <= 1.0:
            raise ValueError(
                f"r_squared must lie in [0, 1], got {self.r_squared_transformed!r}"
            )


@dataclass(frozen=True)
class GoodnessReport:
    rmse_transformed: float
    r_squared_transformed: float
    sse_raw: float
    max_abs_standardized_residual: float
    standardized_residuals: tuple[tuple[float, float], ...]


def _line_stats(
    t: np.ndarray, y: np.ndarray, w: np.ndarray
) -> tuple[float, float, np.ndarray]:
    """Weighted LS line y ~ intercept + slope*t, solved on centered years.

    Returns (intercept, slope, residuals) with the intercept mapped back
    to raw t.  Needs at least two distinct years.
    """
    wsum = w.sum()
    tbar = float((w * t).sum() / wsum)
    ybar = float((w * y).sum() / wsum)
    tc = t - tbar
    denom = float((w * tc * tc).sum())
    if denom <= 0.0:
        raise ValueError("line fit needs at least two distinct years")
    slope = float((w * tc * (y - ybar)).sum() / denom)
    intercept = ybar - slope * tbar
    resid = y - (intercept + slope * t)
    return intercept, slope, resid


def _r_squared(y: np.ndarray, resid: np.ndarray, w: np.ndarray) -> float:
    """Weighted coefficient of determination, clamped into [0, 1].

    A constant target is a perfect fit for a line (SSE <= SST always
    holds for LS with intercept), so SST at round-off level maps to 1.
    """
    wsum = w.sum()
    ybar = float((w * y).sum() / wsum)
    sst = float((w * (y - ybar) ** 2).sum())
    sse = float((w * resid**2).sum())
    floor = (_EXACT_REL * max(float(np.abs(y).max(initial=0.0)), 1e-300)) ** 2 * len(y)
    if sst <= floor:
        return 1.0
    return min(1.0, max(0.0, 1.0 - sse / sst))


def _weights(values: np.ndarray, weighting: str) -> np.ndarray:
    if weighting == WEIGHTING_UNIFORM:
        return np.ones_like(values)
    if weighting == WEIGHTING_VALUE_SQUARED:
        return values**4
    raise ValueError(
        f"unknown weighting {weighting!r}; expected "
        f"{WEIGHTING_UNIFORM!r} or {WEIGHTING_VALUE_SQUARED!r}"
    )


def _require_points(sliced: TimeSeries, what: str) -> tuple[np.ndarray, np.ndarray]:
    if len(sliced) < MIN_POINTS:
        raise InsufficientDataError(
            f"{what} needs at least {MIN_POINTS} points in the window, "
            f"got {len(sliced)}"
        )
    return np.asarray(sliced.years), np.asarray(sliced.values)


def _reciprocal_line_fit(
    series: TimeSeries, window: WindowSpec, weighting: str
) -> FitResult:
    """Reciprocal-space line fit with no shape checks (any slope sign)."""
    t, values = _require_points(slice_series(series, window), "hyperbolic fit")
    y = 1.0 / values
    w = _weights(values, weighting)
    intercept, slope, resid = _line_stats(t, y, w)
    a, k = intercept, -slope
    line = intercept + slope * t
    # Raw-space errors only make sense where the fitted line is positive;
    # callers that allow a sign change must not rely on sse_raw.
    with np.errstate(divide="ignore", invalid="ignore"):
        pred = np.where(line > 0.0, 1.0 / np.where(line > 0.0, line, 1.0), np.inf)
    err = values - pred
    sse_raw = float((err[np.isfinite(err)] ** 2).sum())
    return FitResult(
        params=HyperbolicParams(a=a, k=k),
        model="hyperbolic",
        window=window,
        n=len(t),
        rmse_transformed=float(np.sqrt((resid**2).mean())),
        r_squared_transformed=_r_squared(y, resid, w),
        residuals=tuple(zip(t.tolist(), resid.tolist())),
        sse_raw=sse_raw,
        weighting=weighting,
    )


def fit_hyperbolic(
    series: TimeSeries,
    window: WindowSpec = FULL_WINDOW,
    weighting: str = WEIGHTING_UNIFORM,
) -> FitResult:
    """Estimate S(t) = 1/(a - k*t) on the points inside ``window``.

    Least squares of the reciprocals on the year.  Raises
    InsufficientDataError for fewer than 3 points,
    NonGrowingSeriesError when the estimated k is not positive, and
    PathologicalFitError when the estimated blow-up year a/k does not
    lie beyond the last fitted point (such parameters predict an
    infinite value inside the data).
    """
    result = _reciprocal_line_fit(series, window, weighting)
    a, k = result.params.a, result.params.k
    last_year = result.residuals[-1][0]
    if k <= 0.0:
        raise NonGrowingSeriesError(
            f"fitted decline rate k = {k:.6g} is not positive; the series "
            "does not grow toward a finite-time blow-up",
            rate=k,
        )
    singularity = a / k
    if singularity <= last_year:
        raise PathologicalFitError(
            f"fitted blow-up year {singularity:.6g} lies inside the fitted "
            f"data (last fitted year {last_year:.6g})",
            singularity_time=singularity,
        )
    # Blow-up beyond the data, so raw predictions exist at every fitted year.
    t = np.asarray([yr for yr, _ in result.residuals])
    values = np.asarray(slice_series(series, window).values)
    sse_raw = float(((values - eval_hyperbolic(result.params, t)) ** 2).sum())
    return FitResult(
        params=result.params,
        model=result.model,
        window=window,
        n=result.n,
        rmse_transformed=result.rmse_transformed,
        r_squared_transformed=result.r_squared_transformed,
        residuals=result.residuals,
        sse_raw=sse_raw,
        weighting=weighting,
    )


def fit_exponential(series: TimeSeries, window: WindowSpec = FULL_WINDOW) -> FitResult:
    """Estimate S(t) = s0*exp(r*(t - t_ref)) on the points inside ``window``.

    Least squares of log values on the year; t_ref is the first fitted
    year, so s0 is the fitted level there.  r may take any sign (a
    constant series fits with r = 0).
    """
    t, values = _require_points(slice_series(series, window), "exponential fit")
    y = np.log(values)
    w = np.ones_like(y)
    intercept, slope, resid = _line_stats(t, y, w)
    t_ref = float(t[0])
    params = ExponentialParams(
        s0=float(math.exp(intercept + slope * t_ref)), r=slope, t_ref=t_ref
    )
    sse_raw = float(((values - eval_exponential(params, t)) ** 2).sum())
    return FitResult(
        params=params,
        model="exponential",
        window=window,
        n=len(t),
        rmse_transformed=float(np.sqrt((resid**2).mean())),
        r_squared_transformed=_r_squared(y, resid, w),
        residuals=tuple(zip(t.tolist(), resid.tolist())),
        sse_raw=sse_raw,
        weighting=WEIGHTING_UNIFORM,
    )


def goodness_report(fit: FitResult, series: TimeSeries) -> GoodnessReport:
    """Summary of fit quality, with residuals standardized by the RMSE.

    ``series`` must contain every fitted year (the fit must have been
    produced from it).  A zero RMSE (exact fit) standardizes every
    residual to 0 by convention.
    """
    years = set(series.years)
    missing = [yr for yr, _ in fit.residuals if yr not in years]
    if missing:
        raise ValueError(
            f"fit does not belong to this series: year {missing[0]:.6g} "
            "was fitted but is not present"
        )
    rmse = fit.rmse_transformed
    if rmse > 0.0:
        standardized = tuple((yr, e / rmse) for yr, e in fit.residuals)
    else:
        standardized = tuple((yr, 0.0) for yr, _ in fit.residuals)
    max_abs = max((abs(s) for _, s in standardized), default=0.0)
    return GoodnessReport(
        rmse_transformed=rmse,
        r_squared_transformed=fit.r_squared_transformed,
        sse_raw=fit.sse_raw,
        max_abs_standardized_residual=max_abs,
        standardized_residuals=standardized,
    )
