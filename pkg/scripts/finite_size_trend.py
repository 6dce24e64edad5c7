#!/usr/bin/env python3
"""Per-variable log2 of the exact expected UC leaf count against N, next to omega_C."""

from __future__ import annotations

import argparse
import csv
import logging
import pathlib
import sys

ROOT = pathlib.Path(__file__).resolve().parents[1]
if str(ROOT) not in sys.path:
    sys.path.insert(0, str(ROOT))

from src.asymptotics.uc import omega_c  # noqa: E402
from src.expectation.dense import dp_expect  # noqa: E402
from src.expectation.kernels import DPProblem  # noqa: E402
from src.expectation.table import fmt  # noqa: E402
from src.instances.generator import clauses_for_ratio  # noqa: E402


def trend(alpha: float, sizes: list[int], prune: float) -> list[tuple[int, float]]:
    out = []
    for n in sizes:
        table = dp_expect(n, clauses_for_ratio(n, alpha), DPProblem.SAT_UC, prune=prune, keep_layers=False)
        out.append((n, table.log2_total_leaves() / n))
    return out


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--alpha", type=float, default=10.0)
    parser.add_argument("--sizes", default="10,20,30,40,50")
    parser.add_argument("--prune", type=float, default=1e-30)
    parser.add_argument("--out", default=None)
    args = parser.parse_args()
    logging.basicConfig(level=logging.INFO, format="%(asctime)s %(levelname)s %(name)s: %(message)s")

    sizes = [int(x) for x in args.sizes.split(",")]
    target = omega_c(args.alpha).value
    rows = trend(args.alpha, sizes, args.prune)
    out_path = pathlib.Path(args.out) if args.out else ROOT / "reports" / f"trend_alpha{args.alpha:g}.csv"
    out_path.parent.mkdir(parents=True, exist_ok=True)
    with out_path.open("w", encoding="utf-8", newline="") as fp:
        writer = csv.writer(fp, lineterminator="\n")
        writer.writerow(["n", "log2_leaves_per_n", "omega_c", "gap"])
        for n, rate in rows:
            writer.writerow([n, fmt(rate), fmt(target), fmt(target - rate)])
    for n, rate in rows:
        print(f"n={n} rate={rate:.6f} gap={target - rate:.6f}")
    print(f"wrote {out_path}")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
