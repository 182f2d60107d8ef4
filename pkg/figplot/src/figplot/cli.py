"""figplot command line: one figure per invocation.

Usage: figplot --figure {1..7} --in <report dir> --out <file.png>
Exit codes: 0 success, 1 input problem, 2 usage error.
"""

from __future__ import annotations

import argparse
import sys

from .render import render
from .reports import FigplotError


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="figplot",
        description="Render a standard figure from unideriv report files",
    )
    parser.add_argument("--figure", type=int, required=True,
                        choices=range(1, 8), help="figure number")
    parser.add_argument("--in", dest="indir", required=True,
                        help="directory holding the report files")
    parser.add_argument("--out", required=True, help="output PNG path")
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        render(args.figure, args.indir, args.out)
    except FigplotError as err:
        print(f"figplot: {err}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
