"""Print the benchmark table and the per-row metric reports behind it."""

import argparse
import json
from pathlib import Path

from aua.benchmark import load_rows, render_benchmark


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--fixtures", type=Path, default=None, help="fixtures JSON (default: bundled)")
    ap.add_argument("--json", action="store_true", help="dump cells with computed/constant flags")
    args = ap.parse_args()

    rows = load_rows(args.fixtures)
    if args.json:
        doc = [
            {
                "label": r.label,
                "cells": {k: v.to_json() for k, v in r.cells.items()},
                "computed": r.computed,
                "provenance": r.provenance,
            }
            for r in rows
        ]
        print(json.dumps(doc, indent=2, ensure_ascii=False))
    else:
        print(render_benchmark(rows), end="")


if __name__ == "__main__":
    main()
