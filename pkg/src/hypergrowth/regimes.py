"""Hypothesized growth-regime boundaries vs a single trajectory.

A regime chronology claims the reciprocal line changes slope at given
boundary years.  The charitable version tested here allows an
independent line per segment, discontinuities included: if even that
does not beat the single line, no continuous variant can.

Comparison is a nested-model F-test (the single line is the segmented
family with all segments equal) combined with AIC, both in reciprocal
space.  Segmentation is supported only when the F-statistic exceeds
the critical value at ``alpha`` AND the segmented AIC is lower; the
double requirement guards against borderline significance on sparse
segments.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np
from scipy import stats

from .fitting import WEIGHTING_UNIFORM, FitResult, _line_stats, _reciprocal_line_fit
from .series import TimeSeries, WindowSpec, slice_series

__all__ = [
    "RegimeSpec",
    "RegimeSegment",
    "RegimeTestResult",
    "test_regimes",
    "annotate_regimes",
    "SEGMENTATION_SUPPORTED",
    "SEGMENTATION_NOT_SUPPORTED",
    "INSUFFICIENT_DATA",
]

SEGMENTATION_SUPPORTED = "segmentation_supported"
SEGMENTATION_NOT_SUPPORTED = "segmentation_not_supported"
INSUFFICIENT_DATA = "insufficient_data"

DEFAULT_BOUNDARIES = (1750.0, 1870.0)
DEFAULT_LABELS = ("Malthusian", "post-Malthusian", "sustained-growth")
DEFAULT_ALPHA = 0.01

# Residual sums at or below round-off of an exact fit are treated as
# exact; see _sse_floor.
_EXACT_REL = 1e-12
# Much smaller clamp that keeps log(SSE) finite in the AIC without
# disturbing any genuinely nonzero residual sum.
_AIC_REL = 1e-18


@dataclass(frozen=True)
class RegimeSpec:
    boundaries: tuple[float, ...] = DEFAULT_BOUNDARIES
    labels: tuple[str, ...] = DEFAULT_LABELS

    def __post_init__(self):
        object.__setattr__(self, "boundaries", tuple(float(b) for b in self.boundaries))
        object.__setattr__(self, "labels", tuple(str(s) for s in self.labels))
        for b0, b1 in zip(self.boundaries, self.boundaries[1:]):
            if not b0 < b1:
                raise ValueError(
                    f"boundaries must be strictly increasing, saw {b0:g} then {b1:g}"
                )
        if len(self.labels) != len(self.boundaries) + 1:
            raise ValueError(
                f"need {len(self.boundaries) + 1} labels for "
                f"{len(self.boundaries)} boundaries, got {len(self.labels)}"
            )


class RegimeSegment(NamedTuple):
    label: str
    window: WindowSpec  # descriptive bounds; membership itself is half-open
    n: int


@dataclass(frozen=True)
class RegimeTestResult:
    spec: RegimeSpec
    window: WindowSpec
    alpha: float
    n: int
    segments: tuple[RegimeSegment, ...]      # partition of the tested window
    single_fit: FitResult | None             # None only when n < 3
    segmented_fits: tuple[FitResult, ...]    # one per segment with >= 3 points
    sse_single: float
    sse_segmented: float
    f_statistic: float | None
    f_critical: float | None
    aic_single: float | None
    aic_segmented: float | None
    verdict: str


def _segment_members(
    years: tuple[float, ...], boundaries: tuple[float, ...]
) -> list[list[int]]:
    """Index lists per segment; a point at a boundary joins the segment
    that starts there (half-open rule)."""
    buckets: list[list[int]] = [[] for _ in range(len(boundaries) + 1)]
    arr = np.asarray(boundaries)
    for i, y in enumerate(years):
        buckets[int(np.searchsorted(arr, y, side="right"))].append(i)
    return buckets


def annotate_regimes(series: TimeSeries, spec: RegimeSpec) -> list[RegimeSegment]:
    """Partition the series by the chronology's boundaries.

    Membership is half-open: a point exactly at boundary b belongs to
    the segment beginning at b.  First segment is unbounded below, last
    unbounded above; empty segments are reported with count 0, so the
    counts always sum to the series length.
    """
    buckets = _segment_members(series.years, spec.boundaries)
    bounds: list[float | None] = [None, *spec.boundaries, None]
    return [
        RegimeSegment(
            label=spec.labels[i],
            window=WindowSpec(bounds[i], bounds[i + 1]),
            n=len(buckets[i]),
        )
        for i in range(len(buckets))
    ]


def _line_sse(t: np.ndarray, y: np.ndarray) -> float:
    """Least-squares line SSE; 0 for up to two points (a line is exact)."""
    if len(t) <= 2:
        return 0.0
    _, _, resid = _line_stats(t, y, np.ones_like(y))
    return float((resid**2).sum())


def _sub_series(series: TimeSeries, idx: list[int]) -> TimeSeries:
    return TimeSeries(
        label=series.label,
        years=tuple(series.years[i] for i in idx),
        values=tuple(series.values[i] for i in idx),
        unit=series.unit,
    )


def _aic(sse: float, n: int, n_params: int, floor: float) -> float:
    return n * math.log(max(sse, floor) / n) + 2.0 * n_params


def test_regimes(
    series: TimeSeries,
    spec: RegimeSpec,
    window: WindowSpec = WindowSpec(),
    alpha: float = DEFAULT_ALPHA,
) -> RegimeTestResult:
    """Nested comparison: independent per-segment reciprocal lines vs one.

    Segments are defined by the hypothesized boundaries that fall
    inside the window (half-open membership).  The slope signs are unconstrained;
    this is a line-comparison test, not an escape-trajectory fit.  The
    verdict is insufficient_data when no boundary falls inside the
    window or when any segment holds fewer than 3 points; degenerate
    segments never raise.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError(f"alpha must be strictly between 0 and 1, got {alpha!r}")
    sliced = slice_series(series, window)
    n = len(sliced)

    w_lo = window.t_min if window.t_min is not None else -math.inf
    w_hi = window.t_max if window.t_max is not None else math.inf
    effective = tuple(b for b in spec.boundaries if w_lo <= b <= w_hi)
    all_effective = effective == spec.boundaries

    buckets = _segment_members(sliced.years, effective)
    m = len(buckets)
    bounds: list[float | None] = [window.t_min, *effective, window.t_max]
    segments = tuple(
        RegimeSegment(
            label=spec.labels[i] if all_effective else f"segment_{i + 1}",
            window=WindowSpec(bounds[i], bounds[i + 1]),
            n=len(buckets[i]),
        )
        for i in range(m)
    )

    t_all = np.asarray(sliced.years)
    y_all = 1.0 / np.asarray(sliced.values)
    scale = float(np.abs(y_all).max()) if n else 0.0
    sse_floor = n * (_EXACT_REL * scale) ** 2
    aic_floor = max(n * (_AIC_REL * scale) ** 2, 5e-324)

    single_fit = _reciprocal_line_fit(sliced, window, WEIGHTING_UNIFORM) if n >= 3 else None
    sse_single = _line_sse(t_all, y_all)

    segmented_fits: list[FitResult] = []
    sse_segmented = 0.0
    for i, idx in enumerate(buckets):
        sse_segmented += _line_sse(t_all[idx], y_all[idx])
        if len(idx) >= 3:
            segmented_fits.append(
                _reciprocal_line_fit(
                    _sub_series(sliced, idx), segments[i].window, WEIGHTING_UNIFORM
                )
            )

    testable = m >= 2 and all(len(idx) >= 3 for idx in buckets)
    f_statistic = None
    f_critical = None
    aic_single = _aic(sse_single, n, 2, aic_floor) if n else None
    aic_segmented = _aic(sse_segmented, n, 2 * m, aic_floor) if n else None

    if not testable:
        verdict = INSUFFICIENT_DATA
    else:
        df1 = 2 * (m - 1)
        df2 = n - 2 * m  # >= m since every segment has >= 3 points
        improvement = max(sse_single - sse_segmented, 0.0)
        if sse_single <= sse_floor:
            # The single line is already exact to round-off: splitting a
            # straight line cannot be an improvement.
            f_statistic = 0.0
        elif sse_segmented <= sse_floor:
            f_statistic = math.inf
        else:
            f_statistic = (improvement / df1) / (sse_segmented / df2)
        f_critical = float(stats.f.ppf(1.0 - alpha, df1, df2))
        supported = f_statistic > f_critical and aic_segmented < aic_single
        verdict = SEGMENTATION_SUPPORTED if supported else SEGMENTATION_NOT_SUPPORTED

    return RegimeTestResult(
        spec=spec,
        window=window,
        alpha=alpha,
        n=n,
        segments=segments,
        single_fit=single_fit,
        segmented_fits=tuple(segmented_fits),
        sse_single=sse_single,
        sse_segmented=sse_segmented,
        f_statistic=f_statistic,
        f_critical=f_critical,
        aic_single=aic_single,
        aic_segmented=aic_segmented,
        verdict=verdict,
    )
