"""Dependency-free deterministic SVG line charts.

No plotting library: identical inputs must produce byte-identical
files, so everything here is plain string assembly with fixed canvas
geometry, fixed styling, and arithmetic-only tick placement.  All pixel
coordinates are written with two decimals.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

__all__ = ["ChartSeries", "render_chart", "ticks_125", "decade_ticks"]

WIDTH = 960.0
HEIGHT = 600.0
MARGIN_LEFT = 80.0
MARGIN_RIGHT = 30.0
MARGIN_TOP = 50.0
MARGIN_BOTTOM = 60.0

_FONT = "font-family=\"Helvetica,Arial,sans-serif\""


@dataclass(frozen=True)
class ChartSeries:
    name: str
    points: tuple[tuple[float, float], ...]  # (x, y) in data coordinates
    color: str
    markers: bool = False     # draw a small circle at each point
    dashed: bool = False
    in_range: bool = True     # participates in axis-range computation


def _escape(text: str) -> str:
    return (
        text.replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace('"', "&quot;")
    )


def ticks_125(lo: float, hi: float, target: int = 6) -> list[float]:
    """Tick positions stepping by 1, 2 or 5 times a power of ten.

    Chooses the smallest such step giving at most ``target`` intervals,
    then emits every multiple of it inside [lo, hi].
    """
    if not lo < hi:
        return [lo]
    span = hi - lo
    exponent = math.floor(math.log10(span / target))
    step = 10.0**exponent
    for mult in (1.0, 2.0, 5.0, 10.0, 20.0, 50.0):
        step = mult * 10.0**exponent
        if span / step <= target:
            break
    first = math.ceil(lo / step - 1e-9)
    last = math.floor(hi / step + 1e-9)
    return [i * step for i in range(first, last + 1)]


def decade_ticks(lo: float, hi: float) -> list[float]:
    """Powers of ten covering [lo, hi]; both bounds must be positive."""
    first = math.ceil(math.log10(lo) - 1e-9)
    last = math.floor(math.log10(hi) + 1e-9)
    return [10.0**e for e in range(first, last + 1)]


def _fmt_tick(v: float) -> str:
    return f"{v:g}"


def _px(v: float) -> str:
    return f"{v:.2f}"


def render_chart(
    title: str,
    x_label: str,
    y_label: str,
    series: tuple[ChartSeries, ...],
    vrules: tuple[float, ...] = (),
    y_log10: bool = False,
    y_include_zero: bool = False,
) -> str:
    """Assemble the chart as an SVG document string.

    Axis ranges come from the in-range series (plus the vertical rules
    on x); out-of-range series are clipped to the plot area.  The y
    axis is either linear with 1-2-5 ticks or a log10 axis with decade
    ticks.
    """
    xs = [p[0] for s in series if s.in_range for p in s.points]
    ys = [p[1] for s in series if s.in_range for p in s.points]
    xs.extend(vrules)
    if not xs or not ys:
        raise ValueError("nothing to plot: no in-range points")

    x_lo, x_hi = min(xs), max(xs)
    if x_lo == x_hi:
        x_lo, x_hi = x_lo - 0.5, x_hi + 0.5
    pad = 0.04 * (x_hi - x_lo)
    x_lo, x_hi = x_lo - pad, x_hi + pad

    if y_log10:
        positive = [y for y in ys if y > 0.0]
        if not positive:
            raise ValueError("log axis needs positive values")
        y_lo = 10.0 ** math.floor(math.log10(min(positive)))
        y_hi = 10.0 ** math.ceil(math.log10(max(positive)))
        if y_lo == y_hi:
            y_hi = y_lo * 10.0
        y_ticks = decade_ticks(y_lo, y_hi)

        def y_t(v: float) -> float:
            return math.log10(v)

    else:
        y_lo, y_hi = min(ys), max(ys)
        if y_include_zero:
            y_lo = min(y_lo, 0.0)
        if y_lo == y_hi:
            y_lo, y_hi = y_lo - 0.5, y_hi + 0.5
        pad_y = 0.05 * (y_hi - y_lo)
        y_lo, y_hi = y_lo - (0.0 if y_include_zero and y_lo == 0.0 else pad_y), y_hi + pad_y
        y_ticks = ticks_125(y_lo, y_hi)

        def y_t(v: float) -> float:
            return v

    plot_w = WIDTH - MARGIN_LEFT - MARGIN_RIGHT
    plot_h = HEIGHT - MARGIN_TOP - MARGIN_BOTTOM
    ty_lo, ty_hi = y_t(y_lo), y_t(y_hi)

    def x_px(v: float) -> float:
        return MARGIN_LEFT + (v - x_lo) / (x_hi - x_lo) * plot_w

    def y_px(v: float) -> float:
        return MARGIN_TOP + (ty_hi - y_t(v)) / (ty_hi - ty_lo) * plot_h

    x_ticks = ticks_125(x_lo, x_hi)

    out: list[str] = []
    out.append('<?xml version="1.0" encoding="UTF-8"?>')
    out.append(
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH:g}" '
        f'height="{HEIGHT:g}" viewBox="0 0 {WIDTH:g} {HEIGHT:g}">'
    )
    out.append(f'<rect width="{WIDTH:g}" height="{HEIGHT:g}" fill="white"/>')
    out.append(
        "<defs><clipPath id=\"plot-area\">"
        f'<rect x="{_px(MARGIN_LEFT)}" y="{_px(MARGIN_TOP)}" '
        f'width="{_px(plot_w)}" height="{_px(plot_h)}"/>'
        "</clipPath></defs>"
    )
    out.append(
        f'<text x="{_px(WIDTH / 2)}" y="28" text-anchor="middle" {_FONT} '
        f'font-size="18">{_escape(title)}</text>'
    )

    # gridlines and ticks
    for tx in x_ticks:
        px = x_px(tx)
        out.append(
            f'<line x1="{_px(px)}" y1="{_px(MARGIN_TOP)}" x2="{_px(px)}" '
            f'y2="{_px(MARGIN_TOP + plot_h)}" stroke="#dddddd" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{_px(px)}" y="{_px(MARGIN_TOP + plot_h + 20)}" '
            f'text-anchor="middle" {_FONT} font-size="12">{_fmt_tick(tx)}</text>'
        )
    for tyv in y_ticks:
        py = y_px(tyv)
        out.append(
            f'<line x1="{_px(MARGIN_LEFT)}" y1="{_px(py)}" '
            f'x2="{_px(MARGIN_LEFT + plot_w)}" y2="{_px(py)}" '
            f'stroke="#dddddd" stroke-width="1"/>'
        )
        out.append(
            f'<text x="{_px(MARGIN_LEFT - 8)}" y="{_px(py + 4)}" '
            f'text-anchor="end" {_FONT} font-size="12">{_fmt_tick(tyv)}</text>'
        )

    # plot frame
    out.append(
        f'<rect x="{_px(MARGIN_LEFT)}" y="{_px(MARGIN_TOP)}" width="{_px(plot_w)}" '
        f'height="{_px(plot_h)}" fill="none" stroke="#333333" stroke-width="1"/>'
    )

    # vertical rules (hypothesized boundary years)
    for rule in vrules:
        px = x_px(rule)
        out.append(
            f'<line x1="{_px(px)}" y1="{_px(MARGIN_TOP)}" x2="{_px(px)}" '
            f'y2="{_px(MARGIN_TOP + plot_h)}" stroke="#888888" stroke-width="1" '
            'stroke-dasharray="6,4"/>'
        )
        out.append(
            f'<text x="{_px(px + 4)}" y="{_px(MARGIN_TOP + 14)}" {_FONT} '
            f'font-size="12" fill="#555555">{_fmt_tick(rule)}</text>'
        )

    # series
    for s in series:
        if y_log10:
            pts = [(x, y) for x, y in s.points if y > 0.0]
        else:
            pts = list(s.points)
        if not pts:
            continue
        dash = ' stroke-dasharray="8,5"' if s.dashed else ""
        coords = " ".join(f"{_px(x_px(x))},{_px(y_px(y))}" for x, y in pts)
        if len(pts) > 1:
            out.append(
                f'<polyline points="{coords}" fill="none" stroke="{s.color}" '
                f'stroke-width="2"{dash} clip-path="url(#plot-area)"/>'
            )
        if s.markers:
            for x, y in pts:
                out.append(
                    f'<circle cx="{_px(x_px(x))}" cy="{_px(y_px(y))}" r="3" '
                    f'fill="{s.color}" clip-path="url(#plot-area)"/>'
                )

    # legend, one row per named series
    ly = MARGIN_TOP + 16.0
    for s in series:
        if not s.name:
            continue
        lx = MARGIN_LEFT + 14.0
        dash = ' stroke-dasharray="8,5"' if s.dashed else ""
        out.append(
            f'<line x1="{_px(lx)}" y1="{_px(ly - 4)}" x2="{_px(lx + 26)}" '
            f'y2="{_px(ly - 4)}" stroke="{s.color}" stroke-width="2"{dash}/>'
        )
        out.append(
            f'<text x="{_px(lx + 32)}" y="{_px(ly)}" {_FONT} font-size="12">'
            f"{_escape(s.name)}</text>"
        )
        ly += 18.0

    # axis labels
    out.append(
        f'<text x="{_px(MARGIN_LEFT + plot_w / 2)}" y="{_px(HEIGHT - 14)}" '
        f'text-anchor="middle" {_FONT} font-size="14">{_escape(x_label)}</text>'
    )
    out.append(
        f'<text x="20" y="{_px(MARGIN_TOP + plot_h / 2)}" text-anchor="middle" '
        f'{_FONT} font-size="14" transform="rotate(-90 20 '
        f'{_px(MARGIN_TOP + plot_h / 2)})">{_escape(y_label)}</text>'
    )
    out.append("</svg>")
    return "\n".join(out) + "\n"
