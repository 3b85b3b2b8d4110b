"""Regime-boundary testing against the single-trajectory null."""

from __future__ import annotations

import numpy as np
import pytest

import hypergrowth as hg
from conftest import (
    A_STAR,
    K_STAR,
    broken_slope_series,
    decelerating_series,
    hyperbola_series,
)

WINDOW = hg.WindowSpec(1.0, 1870.0)


def spec_with(boundaries) -> hg.RegimeSpec:
    return hg.RegimeSpec(
        boundaries=tuple(boundaries),
        labels=tuple(f"seg{i}" for i in range(len(boundaries) + 1)),
    )


class TestRegimeSpec:
    def test_defaults(self):
        spec = hg.RegimeSpec()
        assert spec.boundaries == (1750.0, 1870.0)
        assert len(spec.labels) == 3

    def test_boundaries_must_increase(self):
        with pytest.raises(ValueError, match="increasing"):
            hg.RegimeSpec(boundaries=(1870.0, 1750.0), labels=("a", "b", "c"))

    def test_labels_length_checked(self):
        with pytest.raises(ValueError, match="labels"):
            hg.RegimeSpec(boundaries=(1750.0,), labels=("a", "b", "c"))


class TestTestRegimes:
    def test_collinear_null_not_supported(self, trajectory):
        res = hg.test_regimes(trajectory, spec_with([1750.0]), WINDOW)
        assert res.verdict == hg.SEGMENTATION_NOT_SUPPORTED
        assert res.f_statistic == 0.0
        k_values = [fit.params.k for fit in res.segmented_fits]
        assert len(k_values) == 2
        assert abs(k_values[0] - k_values[1]) / K_STAR < 1e-9

    def test_split_anywhere_stays_one_line(self, trajectory):
        # every candidate split keeps >= 3 points in each segment
        for boundaries in ([1600.0], [1600.0, 1820.0], [1700.0], [1750.0]):
            res = hg.test_regimes(trajectory, spec_with(boundaries), WINDOW)
            assert res.verdict == hg.SEGMENTATION_NOT_SUPPORTED
            slopes = [fit.params.k for fit in res.segmented_fits]
            for k in slopes:
                assert abs(k - K_STAR) / K_STAR < 1e-9

    def test_genuine_break_supported(self):
        s = broken_slope_series()
        res = hg.test_regimes(s, spec_with([1750.0]), WINDOW)
        assert res.verdict == hg.SEGMENTATION_SUPPORTED
        assert res.aic_segmented < res.aic_single
        # exact per-segment recovery of the two slopes
        k_left = res.segmented_fits[0].params.k
        k_right = res.segmented_fits[1].params.k
        assert k_left == pytest.approx(2e-4, rel=1e-10)
        assert k_right == pytest.approx(4e-4, rel=1e-10)

    def test_noisy_break_supported_with_finite_f(self):
        s = broken_slope_series(noise=1e-4)
        res = hg.test_regimes(s, spec_with([1750.0]), WINDOW)
        assert res.verdict == hg.SEGMENTATION_SUPPORTED
        assert np.isfinite(res.f_statistic)
        assert res.f_statistic > res.f_critical

    def test_nesting_inequality(self, rng):
        # segmented SSE never exceeds single SSE, whatever the data
        for _ in range(50):
            n = rng.integers(8, 30)
            years = np.sort(rng.uniform(0.0, 2000.0, size=n))
            years += np.arange(n) * 1e-6  # ensure strictly increasing
            values = np.exp(rng.normal(0.0, 1.0, size=n))
            s = hg.TimeSeries("rand", tuple(years), tuple(values))
            b = float(rng.uniform(200.0, 1800.0))
            res = hg.test_regimes(s, spec_with([b]), hg.FULL_WINDOW)
            assert res.sse_segmented <= res.sse_single + 1e-12

    def test_degenerate_segment_gives_insufficient_data(self, trajectory):
        # only 1850 and 1870 fall right of the boundary
        res = hg.test_regimes(trajectory, spec_with([1850.0]), WINDOW)
        assert res.verdict == hg.INSUFFICIENT_DATA
        assert res.f_statistic is None
        assert res.single_fit is not None  # the single line itself is fine

    def test_boundary_outside_window_gives_insufficient_data(self, trajectory):
        res = hg.test_regimes(trajectory, spec_with([1990.0]), WINDOW)
        assert res.verdict == hg.INSUFFICIENT_DATA

    def test_empty_window_does_not_raise(self, trajectory):
        res = hg.test_regimes(
            trajectory, spec_with([1875.0]), hg.WindowSpec(1871.0, 1879.0)
        )
        assert res.verdict == hg.INSUFFICIENT_DATA
        assert res.n == 0
        assert res.single_fit is None

    def test_alpha_validated(self, trajectory):
        with pytest.raises(ValueError, match="alpha"):
            hg.test_regimes(trajectory, hg.RegimeSpec(), WINDOW, alpha=1.5)

    def test_stricter_alpha_cannot_flip_to_supported(self):
        # the critical value grows as alpha falls; a verdict that fails
        # at alpha=0.05 must also fail at alpha=0.01
        s = broken_slope_series(k1=2e-4, k2=2.02e-4, noise=3e-4)
        loose = hg.test_regimes(s, spec_with([1750.0]), WINDOW, alpha=0.05)
        strict = hg.test_regimes(s, spec_with([1750.0]), WINDOW, alpha=0.01)
        if loose.verdict == hg.SEGMENTATION_NOT_SUPPORTED:
            assert strict.verdict == hg.SEGMENTATION_NOT_SUPPORTED

    def test_determinism(self, trajectory):
        a = hg.test_regimes(trajectory, hg.RegimeSpec(), WINDOW)
        b = hg.test_regimes(trajectory, hg.RegimeSpec(), WINDOW)
        assert a == b


class TestAnnotateRegimes:
    def test_counts_sum_to_length(self, decelerating):
        segments = hg.annotate_regimes(decelerating, hg.RegimeSpec())
        assert sum(seg.n for seg in segments) == len(decelerating)
        assert [seg.label for seg in segments] == list(hg.RegimeSpec().labels)

    def test_default_chronology_counts(self, decelerating):
        segments = hg.annotate_regimes(decelerating, hg.RegimeSpec())
        # years: 5 ancient, 4 in [1750,1870), 1870 plus 4 later
        assert [seg.n for seg in segments] == [5, 4, 5]

    def test_series_entirely_before_first_boundary(self):
        s = hyperbola_series(years=(1.0, 500.0, 1000.0))
        segments = hg.annotate_regimes(s, hg.RegimeSpec())
        assert [seg.n for seg in segments] == [3, 0, 0]

    def test_boundary_year_joins_the_segment_it_starts(self):
        s = hyperbola_series(years=(1700.0, 1750.0, 1800.0))
        segments = hg.annotate_regimes(s, hg.RegimeSpec())
        assert [seg.n for seg in segments] == [1, 2, 0]

    def test_windows_describe_partition(self):
        s = hyperbola_series(years=(1.0, 1760.0, 1880.0))
        segments = hg.annotate_regimes(s, hg.RegimeSpec())
        assert segments[0].window == hg.WindowSpec(None, 1750.0)
        assert segments[1].window == hg.WindowSpec(1750.0, 1870.0)
        assert segments[2].window == hg.WindowSpec(1870.0, None)

    def test_counts_sum_for_random_specs(self, decelerating, rng):
        for _ in range(50):
            m = int(rng.integers(1, 5))
            bounds = tuple(sorted(rng.uniform(-100.0, 2100.0, size=m)))
            if len(set(bounds)) != m:
                continue
            spec = spec_with(bounds)
            segments = hg.annotate_regimes(decelerating, spec)
            assert sum(seg.n for seg in segments) == len(decelerating)
