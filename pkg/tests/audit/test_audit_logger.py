from __future__ import annotations

import json
from pathlib import Path

from src.audit.audit_logger import GENESIS, ExperimentLog, verify_chain


def test_chain_links_events(tmp_path: Path) -> None:
    log = ExperimentLog(tmp_path / "run.events.jsonl")
    first = log.append("experiment_started", "RUNNING", {"cells": 2})
    second = log.append("cell_done", "DONE", {"rows": 10}, cell_id=0)
    assert first.prev_hash == GENESIS
    assert second.prev_hash == first.event_hash
    assert second.seq == 1
    assert verify_chain(log.path)


def test_tampering_breaks_the_chain(tmp_path: Path) -> None:
    log = ExperimentLog(tmp_path / "run.events.jsonl")
    log.append("experiment_started", "RUNNING", {"cells": 1})
    log.append("cell_done", "DONE", {"rows": 3}, cell_id=0)
    lines = log.path.read_text(encoding="utf-8").splitlines()
    row = json.loads(lines[1])
    row["payload"]["rows"] = 4
    lines[1] = json.dumps(row)
    log.path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    assert not verify_chain(log.path)


def test_reopening_truncates(tmp_path: Path) -> None:
    path = tmp_path / "run.events.jsonl"
    ExperimentLog(path).append("a", "DONE", {})
    ExperimentLog(path)
    assert path.read_text(encoding="utf-8") == ""
