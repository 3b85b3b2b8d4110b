"""Least-squares estimation of the growth laws."""

from __future__ import annotations

import numpy as np
import pytest

import hypergrowth as hg
from conftest import A_STAR, K_STAR, hyperbola_series


def relerr(got: float, truth: float) -> float:
    return abs(got - truth) / abs(truth)


class TestFitHyperbolic:
    def test_exact_recovery(self, trajectory):
        fit = hg.fit_hyperbolic(trajectory)
        assert relerr(fit.params.a, A_STAR) < 1e-10
        assert relerr(fit.params.k, K_STAR) < 1e-10
        assert fit.r_squared_transformed == pytest.approx(1.0, abs=1e-12)

    def test_both_weightings_exact_on_noiseless(self, trajectory):
        for weighting in (hg.WEIGHTING_UNIFORM, hg.WEIGHTING_VALUE_SQUARED):
            fit = hg.fit_hyperbolic(trajectory, weighting=weighting)
            assert relerr(fit.params.a, A_STAR) < 1e-10
            assert relerr(fit.params.k, K_STAR) < 1e-10

    def test_window_restricts_points(self, trajectory):
        fit = hg.fit_hyperbolic(trajectory, hg.WindowSpec(1500.0, 1870.0))
        assert fit.n == 8
        assert fit.window == hg.WindowSpec(1500.0, 1870.0)

    def test_too_few_points(self, trajectory):
        # only years 1 and 1000 fall inside
        with pytest.raises(hg.InsufficientDataError):
            hg.fit_hyperbolic(trajectory, hg.WindowSpec(1.0, 1000.0))

    def test_declining_series_rejected(self):
        s = hg.TimeSeries("down", (0.0, 1.0, 2.0, 3.0), (8.0, 4.0, 2.0, 1.0))
        with pytest.raises(hg.NonGrowingSeriesError) as err:
            hg.fit_hyperbolic(s)
        assert err.value.rate <= 0.0

    def test_blowup_inside_data_is_pathological(self):
        # reciprocals fall so fast early on that the fitted line crosses
        # zero before the last observation
        recip = (1.0, 0.5, 0.05, 0.04, 0.03, 0.02)
        s = hg.TimeSeries(
            "steep", tuple(range(6)), tuple(1.0 / r for r in recip)
        )
        with pytest.raises(hg.PathologicalFitError) as err:
            hg.fit_hyperbolic(s)
        assert err.value.singularity_time < 5.0

    def test_unknown_weighting_rejected(self, trajectory):
        with pytest.raises(ValueError, match="weighting"):
            hg.fit_hyperbolic(trajectory, weighting="cubic")

    def test_residuals_follow_fitted_points(self, trajectory):
        fit = hg.fit_hyperbolic(trajectory, hg.WindowSpec(1500.0, None))
        assert tuple(y for y, _ in fit.residuals) == trajectory.years[2:]

    def test_scale_covariance(self, trajectory, rng):
        base = hg.fit_hyperbolic(trajectory)
        for _ in range(20):
            c = rng.uniform(1e-3, 1e3)
            scaled = hg.TimeSeries(
                trajectory.label,
                trajectory.years,
                tuple(c * v for v in trajectory.values),
            )
            fit = hg.fit_hyperbolic(scaled)
            assert relerr(fit.params.a, base.params.a / c) < 1e-10
            assert relerr(fit.params.k, base.params.k / c) < 1e-10

    def test_shift_equivariance(self, trajectory, rng):
        # moving the calendar right by d leaves k alone and raises the
        # intercept by k*d (1/S = (a + k*d) - k*(t + d))
        base = hg.fit_hyperbolic(trajectory)
        for _ in range(20):
            d = rng.uniform(-500.0, 500.0)
            shifted = hg.TimeSeries(
                trajectory.label,
                tuple(y + d for y in trajectory.years),
                trajectory.values,
            )
            fit = hg.fit_hyperbolic(shifted)
            assert relerr(fit.params.k, base.params.k) < 1e-9
            assert relerr(fit.params.a, base.params.a + base.params.k * d) < 1e-9

    def test_point_order_does_not_matter(self, trajectory, rng):
        rows = [
            f"{y:.17g},{v:.17g}" for y, v in zip(trajectory.years, trajectory.values)
        ]
        base = hg.fit_hyperbolic(hg.parse_long_csv("year,gdp\n" + "\n".join(rows)))
        order = rng.permutation(len(rows))
        shuffled = hg.parse_long_csv(
            "year,gdp\n" + "\n".join(rows[i] for i in order)
        )
        fit = hg.fit_hyperbolic(shuffled)
        assert fit.params == base.params

    def test_noise_robustness(self, rng):
        # 1% multiplicative noise: estimates stay within 5% of the truth
        # in at least 95% of seeded trials
        years = np.linspace(0.0, 1500.0, 40)
        clean = 1.0 / (A_STAR - K_STAR * years)
        hits = 0
        trials = 200
        for _ in range(trials):
            noisy = clean * (1.0 + rng.normal(0.0, 0.01, size=len(years)))
            s = hg.TimeSeries("noisy", tuple(years), tuple(noisy))
            fit = hg.fit_hyperbolic(s)
            if relerr(fit.params.a, A_STAR) < 0.05 and relerr(fit.params.k, K_STAR) < 0.05:
                hits += 1
        assert hits / trials >= 0.95


class TestFitExponential:
    def test_exact_recovery(self):
        years = tuple(np.linspace(1800.0, 1900.0, 11))
        truth = hg.ExponentialParams(s0=5.0, r=0.02, t_ref=1800.0)
        s = hg.TimeSeries("exp", years, tuple(hg.eval_exponential(truth, np.asarray(years))))
        fit = hg.fit_exponential(s)
        assert fit.params.t_ref == 1800.0
        assert relerr(fit.params.s0, 5.0) < 1e-10
        assert relerr(fit.params.r, 0.02) < 1e-10

    def test_constant_series(self):
        s = hg.TimeSeries("flat", (0.0, 1.0, 2.0, 3.0), (5.0, 5.0, 5.0, 5.0))
        fit = hg.fit_exponential(s)
        assert fit.params.r == pytest.approx(0.0, abs=1e-15)
        assert fit.params.s0 == pytest.approx(5.0, rel=1e-12)
        assert fit.r_squared_transformed == 1.0

    def test_too_few_points(self):
        s = hg.TimeSeries("xs", (0.0, 1.0), (1.0, 2.0))
        with pytest.raises(hg.InsufficientDataError):
            hg.fit_exponential(s)

    def test_structured_residuals_on_escape_segment(self):
        # log of the escape trajectory is convex, so a fitted line leaves
        # positive residuals at both ends and negative in the middle
        years = tuple(np.linspace(1700.0, 1870.0, 18))
        s = hyperbola_series(years=years)
        fit = hg.fit_exponential(s)
        resid = [e for _, e in fit.residuals]
        assert resid[0] > 0.0 and resid[-1] > 0.0
        assert min(resid) < 0.0
        signs = np.sign(resid)
        changes = int(np.sum(signs[1:] != signs[:-1]))
        assert changes == 2


class TestGoodnessReport:
    def test_perfect_fit(self, trajectory):
        fit = hg.fit_hyperbolic(trajectory)
        rep = hg.goodness_report(fit, trajectory)
        assert rep.r_squared_transformed == pytest.approx(1.0, abs=1e-12)
        assert rep.rmse_transformed < 1e-12

    def test_zero_rmse_standardizes_to_zero(self):
        # dyadic reciprocals (1.0, 0.75, 0.5) keep every step of the
        # least-squares arithmetic exact, so the RMSE is literally zero
        s = hg.TimeSeries("dyadic", (0.0, 1.0, 2.0), (1.0, 1.0 / 0.75, 2.0))
        fit = hg.fit_hyperbolic(s)
        assert fit.rmse_transformed == 0.0
        rep = hg.goodness_report(fit, s)
        assert all(v == 0.0 for _, v in rep.standardized_residuals)
        assert rep.max_abs_standardized_residual == 0.0

    def test_symmetric_residual_pattern_gives_rmse_e(self):
        # +e,-e,-e,+e at years 0..3 is orthogonal to any line, so the
        # base line is recovered and the RMSE equals e exactly
        e = 0.01
        recip = np.array([1.0 + e, 0.9 - e, 0.8 - e, 0.7 + e])
        s = hg.TimeSeries("pm", (0.0, 1.0, 2.0, 3.0), tuple(1.0 / recip))
        fit = hg.fit_hyperbolic(s)
        assert fit.params.a == pytest.approx(1.0, rel=1e-12)
        assert fit.params.k == pytest.approx(0.1, rel=1e-12)
        assert fit.rmse_transformed == pytest.approx(e, rel=1e-9)
        rep = hg.goodness_report(fit, s)
        assert rep.max_abs_standardized_residual == pytest.approx(1.0, rel=1e-9)

    def test_foreign_series_rejected(self, trajectory):
        fit = hg.fit_hyperbolic(trajectory)
        other = hg.TimeSeries("other", (5.0, 6.0, 7.0), (1.0, 2.0, 3.0))
        with pytest.raises(ValueError, match="belong"):
            hg.goodness_report(fit, other)
