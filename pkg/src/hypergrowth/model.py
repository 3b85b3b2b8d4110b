"""Growth-law evaluation.

The central object is the escaping trajectory

    S(t) = 1 / (a - k*t)

whose reciprocal 1/S(t) = a - k*t is a straight line in t.  For k > 0
the trajectory blows up at the finite year t = a/k; evaluation past
that point is a domain error.  k = 0 is admitted as the constant limit
so the family degrades gracefully, but a finite blow-up year only
exists for k > 0.

An ordinary exponential S(t) = s0 * exp(r*(t - t_ref)) is provided as
the comparison model.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import NoSingularityError, SingularityError
from .series import TimeSeries

__all__ = [
    "HyperbolicParams",
    "ExponentialParams",
    "eval_hyperbolic",
    "reciprocal_line",
    "singularity_time",
    "eval_exponential",
    "reciprocal_series",
]


@dataclass(frozen=True)
class HyperbolicParams:
    a: float  # reciprocal intercept at year 0
    k: float  # reciprocal decline per year; positive for a growing series

    def __post_init__(self):
        if not (math.isfinite(self.a) and math.isfinite(self.k)):
            raise ValueError(f"parameters must be finite, got a={self.a!r} k={self.k!r}")


@dataclass(frozen=True)
class ExponentialParams:
    s0: float     # level at the reference year, must be positive
    r: float      # continuous growth rate per year
    t_ref: float  # reference year

    def __post_init__(self):
        ok = (
            math.isfinite(self.s0)
            and math.isfinite(self.r)
            and math.isfinite(self.t_ref)
        )
        if not ok or self.s0 <= 0.0:
            raise ValueError(
                f"need finite parameters with s0 > 0, got s0={self.s0!r} "
                f"r={self.r!r} t_ref={self.t_ref!r}"
            )


def _as_array(t) -> tuple[np.ndarray, bool]:
    arr = np.asarray(t, dtype=float)
    return arr, arr.ndim == 0


def reciprocal_line(params: HyperbolicParams, t):
    """The line a - k*t.  Total: defined on every year, any sign.

    Accepts a scalar or an array of years and returns the same shape.
    """
    arr, scalar = _as_array(t)
    out = params.a - params.k * arr
    return float(out) if scalar else out


def singularity_time(params: HyperbolicParams) -> float:
    """Finite blow-up year a/k.  Only a growing series (k > 0) has one."""
    if params.k <= 0.0:
        raise NoSingularityError(
            f"no finite blow-up year for k = {params.k:.6g}; requires k > 0"
        )
    return params.a / params.k


def eval_hyperbolic(params: HyperbolicParams, t):
    """Evaluate S(t) = 1/(a - k*t) where the denominator is positive.

    Raises SingularityError if any requested year has a - k*t <= 0;
    the error carries the blow-up year a/k (when k > 0) so callers can
    report when the trajectory escapes to infinity.
    """
    arr, scalar = _as_array(t)
    denom = params.a - params.k * arr
    if np.any(denom <= 0.0):
        sing = params.a / params.k if params.k > 0.0 else None
        bad = arr if scalar else arr[denom <= 0.0].flat[0]
        detail = (
            f"trajectory escapes to infinity at year {sing:.6g}"
            if sing is not None
            else "denominator a - k*t is not positive"
        )
        raise SingularityError(
            f"cannot evaluate at year {float(bad):.6g}: {detail}",
            singularity_time=sing,
        )
    out = 1.0 / denom
    return float(out) if scalar else out


def eval_exponential(params: ExponentialParams, t):
    """Evaluate s0 * exp(r*(t - t_ref)).  Total in t."""
    arr, scalar = _as_array(t)
    out = params.s0 * np.exp(params.r * (arr - params.t_ref))
    return float(out) if scalar else out


def _reciprocal_unit(unit: str) -> str:
    # Wrapping is its own inverse so that reciprocating twice restores
    # the original annotation along with the values.
    if unit.startswith("1/(") and unit.endswith(")"):
        return unit[3:-1]
    if not unit:
        return unit
    return f"1/({unit})"


def reciprocal_series(series: TimeSeries) -> TimeSeries:
    """Pointwise reciprocal of a series; the unit is annotated accordingly.

    Positive values map to positive values, so applying this twice gives
    back the original series (up to floating-point round-off).
    """
    return TimeSeries(
        label=series.label,
        years=series.years,
        values=tuple(1.0 / v for v in series.values),
        unit=_reciprocal_unit(series.unit),
    )
