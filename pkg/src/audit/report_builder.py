"""Tidy CSV report for experiment cells."""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass, field
from pathlib import Path
from typing import Optional, TextIO

from src.expectation.table import fmt

REPORT_SCHEMA = "# schema: dpll-experiment/1"
REPORT_COLUMNS = (
    "cell_id",
    "problem",
    "heuristic",
    "mode",
    "n",
    "param",
    "height",
    "quantity",
    "mc_mean",
    "mc_stderr",
    "dp_exact",
    "omega_pred",
    "samples",
    "seed",
    "code_version",
    "config_hash",
    "status",
)


@dataclass(frozen=True)
class ReportRow:
    quantity: str
    height: Optional[int] = None
    mc_mean: Optional[float] = None
    mc_stderr: Optional[float] = None
    dp_exact: Optional[float] = None
    omega_pred: Optional[float] = None


@dataclass(frozen=True)
class CellHeader:
    cell_id: int
    problem: str
    heuristic: str
    mode: str
    n: int
    param: float
    samples: int
    seed: str
    code_version: str
    config_hash: str


@dataclass
class ReportArtifact:
    path: Path
    rows_written: int = 0
    failed_cells: list[int] = field(default_factory=list)


def _num(value: Optional[float]) -> str:
    if value is None or (isinstance(value, float) and math.isnan(value)):
        return ""
    return fmt(float(value))


class ReportBuilder:
    """Writes cells as they finish and flushes after each one."""

    def __init__(self, path: Path) -> None:
        self._artifact = ReportArtifact(path=path)
        path.parent.mkdir(parents=True, exist_ok=True)
        self._fp: Optional[TextIO] = None

    def __enter__(self) -> "ReportBuilder":
        self._fp = self._artifact.path.open("w", encoding="utf-8", newline="")
        self._fp.write(REPORT_SCHEMA + "\n")
        self._writer = csv.writer(self._fp, lineterminator="\n")
        self._writer.writerow(REPORT_COLUMNS)
        self._fp.flush()
        return self

    def __exit__(self, *exc: object) -> None:
        if self._fp is not None:
            self._fp.close()
            self._fp = None

    @property
    def artifact(self) -> ReportArtifact:
        return self._artifact

    def write_cell(self, header: CellHeader, rows: list[ReportRow], status: str) -> None:
        if self._fp is None:
            raise RuntimeError("report is not open")
        for row in rows:
            self._writer.writerow(
                [
                    header.cell_id,
                    header.problem,
                    header.heuristic,
                    header.mode,
                    header.n,
                    fmt(header.param),
                    "" if row.height is None else row.height,
                    row.quantity,
                    _num(row.mc_mean),
                    _num(row.mc_stderr),
                    _num(row.dp_exact),
                    _num(row.omega_pred),
                    header.samples,
                    header.seed,
                    header.code_version,
                    header.config_hash,
                    status,
                ]
            )
        self._artifact.rows_written += len(rows)
        if status != "ok":
            self._artifact.failed_cells.append(header.cell_id)
        self._fp.flush()
