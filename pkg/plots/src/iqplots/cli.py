"""Command-line figure renderer for simulator CSV files."""

from __future__ import annotations

import argparse
import sys

from .render import KINDS, PlotSpec, SchemaError, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="iqofdm-plot", description="render simulator CSV output to image files"
    )
    parser.add_argument("kind", choices=KINDS, help="figure kind")
    parser.add_argument("csv", nargs="+", help="input CSV file(s)")
    parser.add_argument("--out", required=True, help="output image (format from extension)")
    parser.add_argument(
        "--labels", nargs="*", default=(), help="legend labels (sorted scheme order)"
    )
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        result = render(
            PlotSpec(csv_paths=tuple(args.csv), kind=args.kind, output=args.out,
                     labels=tuple(args.labels))
        )
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except SchemaError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 4
    except ValueError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 3
    print(f"wrote {result.output}: {result.series} series, {result.points} rows")
    return 0


if __name__ == "__main__":
    sys.exit(main())
