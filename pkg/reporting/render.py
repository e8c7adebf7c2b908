#!/usr/bin/env python3
"""Render a pressure-forge CSV into a figure.

Usage:
    render.py --csv results.csv --kind pressure_vs_t --out fig.svg
    render.py --csv results.csv --kind gap_vs_n --out gap.svg
    render.py --csv support.csv --kind support_lines --out lines.svg
"""

import argparse
import sys

sys.path.insert(0, __file__.rsplit("/", 1)[0] + "/src")

from report_plots import FigureSpec, SchemaError, render


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--csv", required=True)
    parser.add_argument(
        "--kind",
        required=True,
        choices=("pressure_vs_t", "gap_vs_n", "support_lines"),
    )
    parser.add_argument("--out", required=True)
    parser.add_argument("--xlabel")
    parser.add_argument("--ylabel")
    args = parser.parse_args(argv)
    try:
        out = render(
            FigureSpec(args.csv, args.kind, args.out, args.xlabel, args.ylabel)
        )
    except SchemaError as exc:
        print(f"schema error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 2
    print(out)
    return 0


if __name__ == "__main__":
    sys.exit(main())
