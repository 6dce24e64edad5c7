#!/usr/bin/env python3
"""Export growth-rate curves over a ratio or degree grid as CSV."""

from __future__ import annotations

import argparse
import pathlib
import sys

import numpy as np

ROOT = pathlib.Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from src.asymptotics.curves import COL_COLUMNS, SAT_COLUMNS, col_curve_rows, sat_curve_rows, write_curves_csv  # noqa: E402


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--model", choices=("sat", "col"), default="sat")
    parser.add_argument("--lo", type=float, default=0.5)
    parser.add_argument("--hi", type=float, default=20.0)
    parser.add_argument("--count", type=int, default=40)
    parser.add_argument("--k", type=int, default=3)
    parser.add_argument("--grid-points", type=int, default=10_000)
    parser.add_argument("--out", default=None)
    args = parser.parse_args()

    grid = [float(x) for x in np.linspace(args.lo, args.hi, args.count)]
    out_path = pathlib.Path(args.out) if args.out else ROOT / "reports" / f"growth_{args.model}.csv"
    if args.model == "col":
        write_curves_csv(out_path, col_curve_rows(grid, args.grid_points), COL_COLUMNS)
    else:
        write_curves_csv(out_path, sat_curve_rows(grid, args.k, args.grid_points), SAT_COLUMNS)
    print(f"wrote {out_path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
