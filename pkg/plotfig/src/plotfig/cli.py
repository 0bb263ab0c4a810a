"""Command line: ``plotfig <kind> <input.csv> <output image>``."""

from __future__ import annotations

import argparse
import sys

from . import FIGURE_KINDS, FigureSpec, __version__, render


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plotfig",
        description="Render a sweep CSV dataset as a figure.")
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument("kind", choices=FIGURE_KINDS,
                        help="which figure the CSV backs")
    parser.add_argument("input_csv", help="sweep CSV produced by wwentangle")
    parser.add_argument("output_image", help="image file to write (e.g. .png)")
    return parser


def run_cli(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        code = exc.code
        return int(code) if code is not None else 0
    try:
        path = render(FigureSpec(input_path=args.input_csv,
                                 figure_kind=args.kind,
                                 output_image_path=args.output_image))
        print(path)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    return 0


def main() -> None:
    sys.exit(run_cli(sys.argv[1:]))


if __name__ == "__main__":
    main()
