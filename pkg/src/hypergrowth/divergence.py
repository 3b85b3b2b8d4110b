"""Detection of a departure from an established escape trajectory.

The idea: fit the reciprocal line on an anchor window where the
trajectory is trusted, then standardize the reciprocal-space residual
of every later point by the anchor RMSE.  A sustained run of large
same-signed deviations marks the onset of a divergence.  Positive
reciprocal residuals mean the observed values fall below the
trajectory (the reciprocal bends upward): deceleration.  Negative
means acceleration.

The reciprocal line is total in the year, so points beyond the fitted
blow-up year can still be scanned; only the anchor fit itself must be
a valid escape fit.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import FitError, InsufficientDataError
from .fitting import FitResult, fit_hyperbolic
from .model import reciprocal_line
from .series import TimeSeries, WindowSpec, slice_series

__all__ = [
    "DivergenceReport",
    "AnchorScanEntry",
    "detect_divergence",
    "scan_anchor_end",
    "DECELERATION",
    "ACCELERATION",
    "NO_DIVERGENCE",
]

DECELERATION = "deceleration"
ACCELERATION = "acceleration"
NO_DIVERGENCE = "none"

DEFAULT_THRESHOLD_SIGMA = 2.5
DEFAULT_CONSECUTIVE = 2

# An anchor RMSE at or below this fraction of the largest anchor
# reciprocal is round-off, not scatter: the anchor is exact.  Deviations
# are then standardized by the floor itself, which keeps round-off noise
# orders of magnitude below any sane threshold while a genuine break
# still towers over it.
_EXACT_RMSE_REL = 1e-12


@dataclass(frozen=True)
class DivergenceReport:
    onset_year: float | None           # None when no divergence was found
    direction: str                     # "deceleration" | "acceleration" | "none"
    anchor_window: WindowSpec
    threshold_sigma: float
    consecutive_required: int
    evidence: tuple[tuple[float, float], ...]  # (year, standardized residual), every scanned year
    anchor_n: int                      # points the anchor fit rests on
    exact_anchor: bool                 # anchor RMSE was at round-off level
    anchor_fit: FitResult

    def __post_init__(self):
        if (self.onset_year is None) != (self.direction == NO_DIVERGENCE):
            raise ValueError("direction must be 'none' exactly when onset_year is None")


@dataclass(frozen=True)
class AnchorScanEntry:
    anchor_end: float
    report: DivergenceReport | None  # None when this candidate was skipped
    skipped: bool
    reason: str | None


def _first_run_start(
    std: np.ndarray, threshold: float, run_length: int
) -> int | None:
    """Index starting the first run of ``run_length`` same-signed
    exceedances of ``threshold``, or None."""
    exceeds = np.abs(std) > threshold
    signs = np.sign(std)
    count = 0
    sign = 0.0
    for i in range(len(std)):
        if exceeds[i] and (count == 0 or signs[i] == sign):
            if count == 0:
                sign = signs[i]
            count += 1
            if count == run_length:
                return i - run_length + 1
        elif exceeds[i]:
            # sign flipped: this point starts a fresh run
            sign = signs[i]
            count = 1
            if count == run_length:
                return i
        else:
            count = 0
    return None


def detect_divergence(
    series: TimeSeries,
    anchor: WindowSpec,
    threshold_sigma: float = DEFAULT_THRESHOLD_SIGMA,
    consecutive_required: int = DEFAULT_CONSECUTIVE,
) -> DivergenceReport:
    """Scan the points after ``anchor`` for a sustained departure.

    The anchor window is fitted with uniform weighting (errors from that
    fit propagate).  Every year after anchor.t_max is scanned and
    appears in the evidence.  The onset is the first year opening a run
    of ``consecutive_required`` same-signed standardized residuals
    beyond ``threshold_sigma``; lowering the threshold can only move the
    onset earlier.
    """
    if threshold_sigma < 0.0:
        raise ValueError(f"threshold_sigma must be >= 0, got {threshold_sigma!r}")
    if consecutive_required < 1:
        raise ValueError(
            f"consecutive_required must be >= 1, got {consecutive_required!r}"
        )
    if anchor.t_max is None:
        raise InsufficientDataError(
            "anchor window must be bounded above so that points remain to scan"
        )
    anchor_fit = fit_hyperbolic(series, anchor)

    post = [
        (y, v) for y, v in zip(series.years, series.values) if y > anchor.t_max
    ]
    if not post:
        raise InsufficientDataError(
            f"no points after the anchor window (t_max {anchor.t_max:.6g})"
        )
    t = np.asarray([y for y, _ in post])
    raw = 1.0 / np.asarray([v for _, v in post]) - reciprocal_line(anchor_fit.params, t)

    anchor_recip = 1.0 / np.asarray(slice_series(series, anchor).values)
    floor = _EXACT_RMSE_REL * float(np.abs(anchor_recip).max())
    exact = anchor_fit.rmse_transformed <= floor
    denom = floor if exact else anchor_fit.rmse_transformed
    std = raw / denom

    start = _first_run_start(std, threshold_sigma, consecutive_required)
    if start is None:
        onset, direction = None, NO_DIVERGENCE
    else:
        onset = float(t[start])
        direction = DECELERATION if std[start] > 0.0 else ACCELERATION
    return DivergenceReport(
        onset_year=onset,
        direction=direction,
        anchor_window=anchor,
        threshold_sigma=threshold_sigma,
        consecutive_required=consecutive_required,
        evidence=tuple(zip(t.tolist(), std.tolist())),
        anchor_n=anchor_fit.n,
        exact_anchor=exact,
        anchor_fit=anchor_fit,
    )


def scan_anchor_end(
    series: TimeSeries,
    anchor_start: float | None,
    candidate_ends: list[float],
    threshold_sigma: float = DEFAULT_THRESHOLD_SIGMA,
    consecutive_required: int = DEFAULT_CONSECUTIVE,
) -> list[AnchorScanEntry]:
    """Run the detector once per candidate anchor end.

    Candidates whose anchor holds fewer than 3 points, or whose anchor
    cannot be fitted or leaves nothing to scan, are recorded as skipped
    with the reason instead of aborting the whole sweep.
    """
    entries: list[AnchorScanEntry] = []
    for end in candidate_ends:
        anchor = WindowSpec(anchor_start, end)
        n_anchor = len(slice_series(series, anchor))
        if n_anchor < 3:
            entries.append(
                AnchorScanEntry(
                    anchor_end=end,
                    report=None,
                    skipped=True,
                    reason=f"only {n_anchor} anchor points, need 3",
                )
            )
            continue
        try:
            report = detect_divergence(
                series, anchor, threshold_sigma, consecutive_required
            )
        except FitError as exc:
            entries.append(
                AnchorScanEntry(
                    anchor_end=end, report=None, skipped=True, reason=str(exc)
                )
            )
            continue
        entries.append(
            AnchorScanEntry(anchor_end=end, report=report, skipped=False, reason=None)
        )
    return entries
