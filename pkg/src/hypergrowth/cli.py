"""Command-line interface.

Subcommands: fit, detect, regimes, plot.  JSON goes to stdout; charts
go to --out plus a CSV sidecar next to it.  Exit codes:

    0  success
    2  input cannot be read or parsed
    3  estimation failed (too few points, non-growing, pathological)
    4  bad flags or flag combinations
    5  output path cannot be written
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .divergence import DEFAULT_CONSECUTIVE, DEFAULT_THRESHOLD_SIGMA, detect_divergence
from .errors import FitError, HypergrowthError, ParseError
from .fitting import (
    WEIGHTING_UNIFORM,
    WEIGHTING_VALUE_SQUARED,
    fit_hyperbolic,
)
from .model import singularity_time
from .regimes import DEFAULT_ALPHA, DEFAULT_BOUNDARIES, RegimeSpec, test_regimes
from .report import (
    PLOT_KINDS,
    build_plot,
    divergence_to_json,
    fit_to_json,
    regimes_to_json,
    to_json_text,
    window_to_json,
)
from .series import TimeSeries, WindowSpec, parse_long_csv, parse_wide_csv

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_FIT = 3
EXIT_USAGE = 4
EXIT_OUTPUT = 5

_WEIGHTING_FLAGS = {
    "uniform": WEIGHTING_UNIFORM,
    "value-squared": WEIGHTING_VALUE_SQUARED,
}


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    # argparse would sys.exit(2) on its own; usage problems must map to
    # exit code 4 instead, so turn them into exceptions.
    def error(self, message):
        raise _UsageError(message)


def _boundaries_arg(text: str) -> tuple[float, ...]:
    try:
        values = tuple(float(part) for part in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(
            f"boundaries must be comma-separated years, got {text!r}"
        ) from None
    for b0, b1 in zip(values, values[1:]):
        if not b0 < b1:
            raise argparse.ArgumentTypeError(
                f"boundaries must be strictly increasing, saw {b0:g} then {b1:g}"
            )
    return values


def _build_parser() -> argparse.ArgumentParser:
    parser = _Parser(
        prog="hypergrowth",
        description=(
            "Fit escape trajectories S(t) = 1/(a - k*t) to annual series, "
            "locate divergence onsets, test regime boundaries, draw charts."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--input", required=True, help="CSV file to read")
        p.add_argument(
            "--format",
            choices=("long", "wide"),
            default="long",
            help="CSV layout (default: long)",
        )
        p.add_argument(
            "--series",
            default=None,
            help="row label to pick (required for wide format)",
        )
        p.add_argument(
            "--from", dest="t_from", type=float, default=None, help="window start year"
        )
        p.add_argument(
            "--to", dest="t_to", type=float, default=None, help="window end year"
        )

    p_fit = sub.add_parser("fit", help="estimate the escape trajectory")
    add_common(p_fit)
    p_fit.add_argument(
        "--weighting",
        choices=tuple(_WEIGHTING_FLAGS),
        default="uniform",
        help="least-squares weighting on the reciprocal scale",
    )
    p_fit.set_defaults(handler=_cmd_fit)

    p_detect = sub.add_parser("detect", help="find a divergence onset")
    add_common(p_detect)
    p_detect.add_argument(
        "--anchor-from", dest="anchor_from", type=float, default=None
    )
    p_detect.add_argument(
        "--anchor-to", dest="anchor_to", type=float, required=True
    )
    p_detect.add_argument(
        "--threshold-sigma",
        dest="threshold_sigma",
        type=float,
        default=DEFAULT_THRESHOLD_SIGMA,
    )
    p_detect.add_argument(
        "--consecutive", type=int, default=DEFAULT_CONSECUTIVE
    )
    p_detect.set_defaults(handler=_cmd_detect)

    p_regimes = sub.add_parser("regimes", help="test hypothesized regime boundaries")
    add_common(p_regimes)
    p_regimes.add_argument(
        "--boundaries", type=_boundaries_arg, default=DEFAULT_BOUNDARIES
    )
    p_regimes.add_argument("--alpha", type=float, default=DEFAULT_ALPHA)
    p_regimes.set_defaults(handler=_cmd_regimes)

    p_plot = sub.add_parser("plot", help="write an SVG chart and CSV sidecar")
    add_common(p_plot)
    p_plot.add_argument("--kind", choices=PLOT_KINDS, required=True)
    p_plot.add_argument("--out", required=True, help="SVG output path")
    p_plot.add_argument(
        "--overlay-fit",
        dest="overlay_fit",
        action="store_true",
        help="overlay the fitted trajectory",
    )
    p_plot.add_argument(
        "--fit-from",
        dest="fit_from",
        type=float,
        default=None,
        help="fit window start for the overlay (default: plot window)",
    )
    p_plot.add_argument(
        "--fit-to",
        dest="fit_to",
        type=float,
        default=None,
        help="fit window end for the overlay (default: plot window)",
    )
    p_plot.add_argument(
        "--overlay-regimes",
        dest="overlay_regimes",
        action="store_true",
        help="draw vertical rules at the regime boundaries",
    )
    p_plot.add_argument(
        "--boundaries", type=_boundaries_arg, default=DEFAULT_BOUNDARIES
    )
    p_plot.set_defaults(handler=_cmd_plot)
    return parser


def _window(t_from: float | None, t_to: float | None) -> WindowSpec:
    try:
        return WindowSpec(t_from, t_to)
    except ValueError as exc:
        raise _UsageError(str(exc)) from None


def _load_series(args) -> TimeSeries:
    path = Path(args.input)
    try:
        raw = path.read_bytes()
    except OSError as exc:
        raise ParseError(f"cannot read input file {path}: {exc.strerror}") from None
    try:
        text = raw.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path} is not valid UTF-8: {exc}") from None
    if args.format == "wide":
        if not args.series:
            raise _UsageError("--format wide requires --series LABEL")
        return parse_wide_csv(text, args.series)
    label = args.series if args.series else path.stem
    return parse_long_csv(text, label=label)


def _emit(payload: dict) -> int:
    sys.stdout.write(to_json_text(payload))
    return EXIT_OK


def _cmd_fit(args) -> int:
    window = _window(args.t_from, args.t_to)
    series = _load_series(args)
    fit = fit_hyperbolic(series, window, _WEIGHTING_FLAGS[args.weighting])
    payload = {
        "label": series.label,
        "unit": series.unit,
        **fit_to_json(fit),
        "singularity_year": singularity_time(fit.params),
    }
    return _emit(payload)


def _cmd_detect(args) -> int:
    if args.threshold_sigma < 0.0:
        raise _UsageError(f"--threshold-sigma must be >= 0, got {args.threshold_sigma:g}")
    if args.consecutive < 1:
        raise _UsageError(f"--consecutive must be >= 1, got {args.consecutive}")
    anchor = _window(args.anchor_from, args.anchor_to)
    series = _load_series(args)
    report = detect_divergence(
        series, anchor, args.threshold_sigma, args.consecutive
    )
    payload = {
        "label": series.label,
        "unit": series.unit,
        **divergence_to_json(report),
    }
    return _emit(payload)


def _cmd_regimes(args) -> int:
    if not 0.0 < args.alpha < 1.0:
        raise _UsageError(f"--alpha must be strictly between 0 and 1, got {args.alpha:g}")
    window = _window(args.t_from, args.t_to)
    boundaries = tuple(args.boundaries)
    if boundaries == DEFAULT_BOUNDARIES:
        spec = RegimeSpec()
    else:
        labels = tuple(f"segment_{i + 1}" for i in range(len(boundaries) + 1))
        spec = RegimeSpec(boundaries=boundaries, labels=labels)
    series = _load_series(args)
    result = test_regimes(series, spec, window, args.alpha)
    payload = {
        "label": series.label,
        "unit": series.unit,
        **regimes_to_json(result),
    }
    return _emit(payload)


def _cmd_plot(args) -> int:
    if args.kind == "reciprocal-tail" and args.t_from is None:
        raise _UsageError("--kind reciprocal-tail requires --from YEAR")
    window = _window(args.t_from, args.t_to)
    series = _load_series(args)

    fit = None
    if args.overlay_fit:
        fit_window = _window(
            args.fit_from if args.fit_from is not None else args.t_from,
            args.fit_to if args.fit_to is not None else args.t_to,
        )
        fit = fit_hyperbolic(series, fit_window)
    boundaries = tuple(args.boundaries) if args.overlay_regimes else ()

    svg, sidecar = build_plot(series, args.kind, window, fit, boundaries)
    out_svg = Path(args.out)
    out_csv = out_svg.with_suffix(".csv")
    try:
        out_svg.write_text(svg, encoding="utf-8")
        out_csv.write_text(sidecar, encoding="utf-8")
    except OSError as exc:
        print(f"error: cannot write output: {exc}", file=sys.stderr)
        return EXIT_OUTPUT
    payload = {
        "kind": args.kind,
        "svg": str(out_svg),
        "sidecar": str(out_csv),
        "window": window_to_json(window),
        "overlay_fit": fit_to_json(fit) if fit is not None else None,
        "boundaries": list(boundaries),
    }
    return _emit(payload)


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return args.handler(args)
    except _UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except FitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FIT
    except HypergrowthError as exc:
        # remaining domain errors stem from unusable estimation results
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FIT


if __name__ == "__main__":
    sys.exit(main())
