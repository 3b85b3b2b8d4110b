"""Annual time-series container, year windows, and CSV ingestion.

Two CSV layouts are understood:

* long: a ``year,gdp`` header followed by one ``year,value`` record per
  line.  Blank lines are skipped.
* wide: first row holds years (the top-left cell is ignored), first
  column holds series labels, one series per row.  Empty cells mean
  "no observation for that year" and are omitted, never zero-filled.

Values must be positive; the analysis works on reciprocals and on
logarithms, so a zero or negative observation can never be used.
"""

from __future__ import annotations

import csv
import io
import math
from dataclasses import dataclass, field

from .errors import ParseError

__all__ = [
    "TimeSeries",
    "WindowSpec",
    "parse_long_csv",
    "parse_wide_csv",
    "slice_series",
]

LONG_HEADER = ("year", "gdp")


def _fmt_year(year: float) -> str:
    """Format a year for messages: 1870.0 prints as 1870."""
    return f"{year:.12g}"


@dataclass(frozen=True)
class TimeSeries:
    label: str                      # series/region name, e.g. a Maddison row label
    years: tuple[float, ...]        # strictly increasing
    values: tuple[float, ...]       # positive, finite, same length as years
    unit: str = ""                  # free-text value unit, carried into reports

    def __post_init__(self):
        years = tuple(float(y) for y in self.years)
        values = tuple(float(v) for v in self.values)
        object.__setattr__(self, "years", years)
        object.__setattr__(self, "values", values)
        if len(years) != len(values):
            raise ValueError(
                f"years and values differ in length: {len(years)} vs {len(values)}"
            )
        for y in years:
            if not math.isfinite(y):
                raise ValueError(f"non-finite year {y!r}")
        for y0, y1 in zip(years, years[1:]):
            if not y0 < y1:
                raise ValueError(
                    f"years must be strictly increasing; saw {_fmt_year(y0)} "
                    f"followed by {_fmt_year(y1)}"
                )
        for y, v in zip(years, values):
            if not math.isfinite(v) or v <= 0.0:
                raise ValueError(
                    f"value for year {_fmt_year(y)} must be a positive finite "
                    f"number, got {v!r}"
                )

    def __len__(self) -> int:
        return len(self.years)


@dataclass(frozen=True)
class WindowSpec:
    """Inclusive year window; a None bound means unbounded on that side."""

    t_min: float | None = None
    t_max: float | None = None

    def __post_init__(self):
        if self.t_min is not None and not math.isfinite(self.t_min):
            raise ValueError(f"t_min must be finite or None, got {self.t_min!r}")
        if self.t_max is not None and not math.isfinite(self.t_max):
            raise ValueError(f"t_max must be finite or None, got {self.t_max!r}")
        if self.t_min is not None and self.t_max is not None and self.t_min > self.t_max:
            raise ValueError(
                f"window is empty: t_min {_fmt_year(self.t_min)} exceeds "
                f"t_max {_fmt_year(self.t_max)}"
            )

    def contains(self, year: float) -> bool:
        if self.t_min is not None and year < self.t_min:
            return False
        if self.t_max is not None and year > self.t_max:
            return False
        return True

    def intersection(self, other: "WindowSpec") -> "WindowSpec | None":
        """Largest window inside both, or None when they do not overlap."""
        lo = max(
            (b for b in (self.t_min, other.t_min) if b is not None), default=None
        )
        hi = min(
            (b for b in (self.t_max, other.t_max) if b is not None), default=None
        )
        if lo is not None and hi is not None and lo > hi:
            return None
        return WindowSpec(lo, hi)


# Unbounded window, shared default for the fitting entry points.
FULL_WINDOW = WindowSpec(None, None)


def slice_series(series: TimeSeries, window: WindowSpec) -> TimeSeries:
    """Points of ``series`` with year inside ``window`` (bounds inclusive).

    An empty result is valid; label and unit are preserved.
    """
    pairs = [
        (y, v) for y, v in zip(series.years, series.values) if window.contains(y)
    ]
    return TimeSeries(
        label=series.label,
        years=tuple(y for y, _ in pairs),
        values=tuple(v for _, v in pairs),
        unit=series.unit,
    )


def _parse_number(text: str, what: str, where: str) -> float:
    try:
        value = float(text)
    except ValueError:
        raise ParseError(f"{where}: {what} {text!r} is not a number") from None
    if not math.isfinite(value):
        raise ParseError(f"{where}: {what} {text!r} is not finite")
    return value


def _build_series(
    pairs: list[tuple[float, float, str]], label: str, unit: str
) -> TimeSeries:
    """Sort (year, value, origin) triples by year; duplicate years are a hard error."""
    pairs = sorted(pairs, key=lambda p: p[0])
    for (y0, _, w0), (y1, _, w1) in zip(pairs, pairs[1:]):
        if y0 == y1:
            raise ParseError(
                f"duplicate year {_fmt_year(y0)} ({w0} and {w1}); "
                "each year may appear at most once"
            )
    return TimeSeries(
        label=label,
        years=tuple(p[0] for p in pairs),
        values=tuple(p[1] for p in pairs),
        unit=unit,
    )


def parse_long_csv(text: str, label: str = "", unit: str = "") -> TimeSeries:
    """Parse the long layout: ``year,gdp`` header, one record per line.

    Records may arrive in any order; output is sorted by year.  Raises
    ParseError naming the line for malformed rows, non-numeric or
    non-positive values, and naming the year for duplicates.
    """
    reader = csv.reader(io.StringIO(text))
    rows = [(reader.line_num, row) for row in reader]
    # Whitespace-only lines carry no record and are skipped.
    rows = [(ln, row) for ln, row in rows if any(cell.strip() for cell in row)]
    if not rows:
        raise ParseError("no header row; expected 'year,gdp'")
    header_ln, header = rows[0]
    header_norm = tuple(cell.strip().lower() for cell in header)
    if header_norm != LONG_HEADER:
        raise ParseError(
            f"line {header_ln}: expected header 'year,gdp', got {','.join(header)!r}"
        )
    pairs: list[tuple[float, float, str]] = []
    for ln, row in rows[1:]:
        where = f"line {ln}"
        if len(row) != 2:
            raise ParseError(f"{where}: expected 2 fields (year,gdp), got {len(row)}")
        year = _parse_number(row[0].strip(), "year", where)
        value = _parse_number(row[1].strip(), "value", where)
        if value <= 0.0:
            raise ParseError(f"{where}: value {row[1].strip()!r} must be positive")
        pairs.append((year, value, where))
    return _build_series(pairs, label=label, unit=unit)


def parse_wide_csv(text: str, row_label: str, unit: str = "") -> TimeSeries:
    """Parse one row of the wide layout into a TimeSeries.

    ``row_label`` must match a first-column label exactly after trimming
    surrounding whitespace on both sides.  Empty cells are omitted.
    """
    reader = csv.reader(io.StringIO(text))
    table = list(reader)
    if not table or not any(cell.strip() for cell in table[0]):
        raise ParseError("no header row; expected years in the first row")
    year_cells = table[0][1:]  # top-left cell is ignored

    wanted = row_label.strip()
    matches = []
    labels = []
    for idx, row in enumerate(table[1:], start=2):
        if not any(cell.strip() for cell in row):
            continue
        lab = (row[0] if row else "").strip()
        labels.append(lab)
        if lab == wanted:
            matches.append((idx, row))
    if not matches:
        available = ", ".join(repr(lab) for lab in labels)
        raise ParseError(
            f"series {wanted!r} not found; available labels: {available}"
        )
    if len(matches) > 1:
        lines = ", ".join(str(idx) for idx, _ in matches)
        raise ParseError(
            f"series label {wanted!r} is ambiguous: rows {lines} both match"
        )

    row_ln, row = matches[0]
    if len(row) > len(table[0]):
        raise ParseError(
            f"line {row_ln}: row has {len(row)} cells but the header names "
            f"only {len(table[0])} columns"
        )
    pairs: list[tuple[float, float, str]] = []
    for col, cell in enumerate(row[1:], start=2):
        if not cell.strip():
            continue  # missing observation, omitted
        where = f"line {row_ln}, column {col}"
        if col - 2 >= len(year_cells) or not year_cells[col - 2].strip():
            raise ParseError(f"{where}: cell has no year in the header row")
        year = _parse_number(
            year_cells[col - 2].strip(), "year", f"line 1, column {col}"
        )
        value = _parse_number(cell.strip(), "value", where)
        if value <= 0.0:
            raise ParseError(f"{where}: value {cell.strip()!r} must be positive")
        pairs.append((year, value, where))
    return _build_series(pairs, label=wanted, unit=unit)
