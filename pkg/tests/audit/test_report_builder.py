from __future__ import annotations

import csv
from pathlib import Path

import pytest

from src.audit.provenance import canonical_json, config_hash
from src.audit.report_builder import REPORT_COLUMNS, REPORT_SCHEMA, CellHeader, ReportBuilder, ReportRow


def _header(cell_id: int) -> CellHeader:
    return CellHeader(
        cell_id=cell_id,
        problem="sat",
        heuristic="uc",
        mode="count",
        n=10,
        param=2.0,
        samples=5,
        seed=f"1:{cell_id}:0-4",
        code_version="0.1.0",
        config_hash="abc",
    )


def test_cells_are_written_in_order(tmp_path: Path) -> None:
    path = tmp_path / "report.csv"
    with ReportBuilder(path) as report:
        report.write_cell(_header(0), [ReportRow("total_leaves", mc_mean=3.5, mc_stderr=float("nan"))], "ok")
        report.write_cell(_header(1), [ReportRow("cell_failed")], "failed")
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0] == REPORT_SCHEMA
    rows = list(csv.DictReader(lines[1:]))
    assert tuple(rows[0].keys()) == REPORT_COLUMNS
    assert rows[0]["mc_mean"] == "3.5"
    assert rows[0]["mc_stderr"] == ""
    assert rows[0]["height"] == ""
    assert rows[1]["status"] == "failed"
    assert report.artifact.rows_written == 2
    assert report.artifact.failed_cells == [1]


def test_writing_outside_the_context_fails(tmp_path: Path) -> None:
    report = ReportBuilder(tmp_path / "report.csv")
    with pytest.raises(RuntimeError):
        report.write_cell(_header(0), [], "ok")


def test_config_hash_ignores_key_order() -> None:
    assert canonical_json({"b": 1, "a": [1, 2]}) == '{"a":[1,2],"b":1}'
    assert config_hash({"a": 1, "b": 2}) == config_hash({"b": 2, "a": 1})
    assert len(config_hash({})) == 64
