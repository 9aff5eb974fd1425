"""Command-line entry point: render_portrait <portrait.json> <out.png/svg>.

Prints one drawn layer name per line.  Exit codes: 0 success, 2 usage or
unreadable input, 1 rendering failure.
"""

from __future__ import annotations

import argparse
import json
import sys

from .render import render_portrait


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="render_portrait",
        description="Render a phase diagram from an emitted portrait.json.",
    )
    parser.add_argument("portrait", help="portrait.json produced by the CLI")
    parser.add_argument("out", help="output image path (.png or .svg)")
    args = parser.parse_args(argv)

    try:
        with open(args.portrait, encoding="utf-8") as fh:
            json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        print(f"cannot read {args.portrait}: {exc}", file=sys.stderr)
        return 2

    try:
        summary = render_portrait(args.portrait, args.out)
    except Exception as exc:  # pragma: no cover - defensive
        print(f"rendering failed: {exc}", file=sys.stderr)
        return 1
    for layer in summary["layers"]:
        print(layer)
    return 0


if __name__ == "__main__":
    sys.exit(main())
