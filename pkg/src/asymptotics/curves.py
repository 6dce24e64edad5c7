"""Growth-curve tables over a ratio or degree grid."""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Iterable, Sequence

from src.asymptotics.col import col_first_moment, omega_col
from src.asymptotics.guc import omega_guc
from src.asymptotics.uc import omega_c, omega_s
from src.expectation.table import fmt

SAT_COLUMNS = ("param", "omega_s", "omega_c", "omega_g", "argmax", "boundary_flag")
COL_COLUMNS = ("param", "omega_s", "omega_h", "argmax", "boundary_flag")
CURVES_SCHEMA = "# schema: dpll-growth-curves/1"


def sat_curve_rows(alphas: Iterable[float], k: int = 3, grid_points: int = 10_000) -> list[dict[str, object]]:
    """One row per alpha; argmax and boundary_flag describe the GUC maximum.

    The GUC rate exists for k = 3 only; other k leave omega_g empty and
    report the UC maximum instead.
    """

    rows = []
    for alpha in alphas:
        uc = omega_c(alpha, k, grid_points=grid_points)
        row: dict[str, object] = {"param": alpha, "omega_s": omega_s(alpha, k), "omega_c": uc.value}
        if k == 3 and alpha > 0:
            guc = omega_guc(alpha, grid_points=grid_points)
            row.update(omega_g=guc.value, argmax=guc.argmax, boundary_flag=guc.boundary_flag)
        else:
            row.update(omega_g="", argmax=uc.argmax, boundary_flag=uc.boundary_flag)
        rows.append(row)
    return rows


def col_curve_rows(degrees: Iterable[float], grid_points: int = 10_000) -> list[dict[str, object]]:
    rows = []
    for c in degrees:
        result = omega_col(c, grid_points=grid_points)
        rows.append(
            {
                "param": c,
                "omega_s": col_first_moment(c),
                "omega_h": result.value,
                "argmax": result.argmax,
                "boundary_flag": result.boundary_flag,
            }
        )
    return rows


def _cell(value: object) -> str:
    if isinstance(value, bool):
        return str(value).lower()
    if isinstance(value, float):
        return fmt(value)
    return str(value)


def write_curves_csv(path: Path, rows: Sequence[dict[str, object]], columns: Sequence[str]) -> None:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", encoding="utf-8", newline="") as fp:
        fp.write(CURVES_SCHEMA + "\n")
        writer = csv.writer(fp, lineterminator="\n")
        writer.writerow(columns)
        for row in rows:
            writer.writerow([_cell(row[column]) for column in columns])
