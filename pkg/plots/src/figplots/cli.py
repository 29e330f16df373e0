"""Command line: render --spec <name> --in <dir> --out <file>."""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .render import SchemaError, render
from .specs import SPECS


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(
        prog="render", description="Render a freqconv figure from CSV data")
    parser.add_argument("--spec", required=True, choices=sorted(SPECS),
                        help="bundled plot spec")
    parser.add_argument("--in", dest="in_dir", required=True, type=Path,
                        help="directory holding the input CSVs")
    parser.add_argument("--out", required=True, type=Path,
                        help="output image file (suffix picks the format)")
    args = parser.parse_args(argv)
    try:
        path = render(args.spec, args.in_dir, args.out)
    except (SchemaError, FileNotFoundError) as exc:
        print(f"render error: {exc}", file=sys.stderr)
        return 1
    print(path)
    return 0


if __name__ == "__main__":
    sys.exit(main())
