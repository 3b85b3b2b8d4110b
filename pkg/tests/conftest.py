"""Shared synthetic fixtures.

All series here are generated from known parameters so tests can check
estimates against the exact truth.  The canonical parameter pair
(A_STAR, K_STAR) puts the blow-up year near 1896.6, with a calendar
grid whose sampling density mimics long-run GDP compilations: sparse
antiquity, denser modern era.
"""

from __future__ import annotations

import numpy as np
import pytest

import hypergrowth as hg

A_STAR = 0.6547
K_STAR = 3.452e-4

# Pre-divergence calendar grid: 5 sparse ancient points, 5 denser ones.
ANCHOR_YEARS = (1.0, 1000.0, 1500.0, 1600.0, 1700.0, 1760.0, 1790.0, 1820.0, 1850.0, 1870.0)
POST_YEARS = (1880.0, 1890.0, 1900.0, 1913.0)


def hyperbola_series(
    a: float = A_STAR,
    k: float = K_STAR,
    years: tuple[float, ...] = ANCHOR_YEARS,
    label: str = "synthetic",
    unit: str = "widgets",
) -> hg.TimeSeries:
    values = tuple(1.0 / (a - k * y) for y in years)
    return hg.TimeSeries(label=label, years=years, values=values, unit=unit)


def decelerating_series(
    a: float = A_STAR,
    k: float = K_STAR,
    break_year: float = 1870.0,
    slow_factor: float = 0.3,
    post_years: tuple[float, ...] = POST_YEARS,
) -> hg.TimeSeries:
    """Exact trajectory through break_year, then the reciprocal keeps
    falling but at slow_factor times the rate (growth slows down)."""
    y_break = a - k * break_year
    years = tuple(y for y in ANCHOR_YEARS if y <= break_year) + post_years
    recip = [a - k * y for y in years if y <= break_year]
    recip += [y_break - slow_factor * k * (y - break_year) for y in post_years]
    assert all(r > 0.0 for r in recip)
    return hg.TimeSeries(
        label="synthetic-decel",
        years=years,
        values=tuple(1.0 / r for r in recip),
        unit="widgets",
    )


def breaking_series(rng, n_post: int = 8, level_drop: float = 0.10):
    """Noisy trajectory with a level break: post-anchor values sit
    level_drop below the trajectory.  Returns (series, first_post_year)."""
    years = np.linspace(700.0, 1500.0, 24)
    post = np.linspace(1550.0, 1750.0, n_post)
    clean = 1.0 / (A_STAR - K_STAR * np.concatenate([years, post]))
    clean[len(years):] *= 1.0 - level_drop
    noisy = clean * (1.0 + rng.normal(0.0, 0.01, size=len(clean)))
    s = hg.TimeSeries("break", tuple(np.concatenate([years, post])), tuple(noisy))
    return s, float(post[0])


def broken_slope_series(
    k1: float = 2e-4, k2: float = 4e-4, noise: float = 0.0
) -> hg.TimeSeries:
    """Reciprocals fall at k1 until 1750, then at k2: a genuine break."""
    a = 0.65
    years = (1.0, 400.0, 800.0, 1100.0, 1300.0, 1500.0, 1600.0, 1700.0,
             1750.0, 1780.0, 1810.0, 1840.0, 1870.0)
    recip = []
    y_break = a - k1 * 1750.0
    for i, t in enumerate(years):
        r = a - k1 * t if t < 1750.0 else y_break - k2 * (t - 1750.0)
        if noise:
            r *= 1.0 + noise * (1 if i % 2 else -1)
        recip.append(r)
    assert min(recip) > 0.0
    return hg.TimeSeries("broken", years, tuple(1.0 / r for r in recip))


@pytest.fixture
def trajectory() -> hg.TimeSeries:
    return hyperbola_series()


@pytest.fixture
def decelerating() -> hg.TimeSeries:
    return decelerating_series()


@pytest.fixture
def rng() -> np.random.Generator:
    return np.random.default_rng(20260815)
