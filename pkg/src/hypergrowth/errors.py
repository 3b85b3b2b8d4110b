"""Exception hierarchy shared by the whole package.

The CLI maps these onto its exit codes, so the split matters:
input/parsing problems and estimation problems must stay distinguishable
all the way up the stack.
"""

from __future__ import annotations


class HypergrowthError(Exception):
    """Base class for every error raised by this package."""


class ParseError(HypergrowthError, ValueError):
    """Malformed or unusable input data (CSV structure, values, labels)."""


class FitError(HypergrowthError, ValueError):
    """An estimation routine could not produce a usable fit."""


class InsufficientDataError(FitError):
    """Fewer points than the estimator needs (minimum is 3)."""


class NonGrowingSeriesError(FitError):
    """The fitted reciprocal slope implies a flat or shrinking series.

    Carries the offending rate in ``rate`` so callers can report it.
    """

    def __init__(self, message: str, rate: float):
        super().__init__(message)
        self.rate = rate


class PathologicalFitError(FitError):
    """The fitted blow-up year lands inside the fitted data itself.

    Such parameters predict an infinite value before the data ends and
    cannot describe the observations; ``singularity_time`` carries the
    offending year.
    """

    def __init__(self, message: str, singularity_time: float):
        super().__init__(message)
        self.singularity_time = singularity_time


class SingularityError(HypergrowthError, ValueError):
    """Evaluation requested at or beyond the model's blow-up year.

    ``singularity_time`` is the finite escape year a/k when one exists
    (growing case), else None.
    """

    def __init__(self, message: str, singularity_time: float | None):
        super().__init__(message)
        self.singularity_time = singularity_time


class NoSingularityError(HypergrowthError, ValueError):
    """A finite blow-up year was requested for a non-growing parameter set."""
