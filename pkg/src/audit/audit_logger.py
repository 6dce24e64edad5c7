"""JSONL experiment event log with hash-chain."""

from __future__ import annotations

import hashlib
import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Optional

from src.audit.provenance import canonical_json

GENESIS = "GENESIS"


@dataclass(frozen=True)
class ExperimentEvent:
    seq: int
    cell_id: Optional[int]
    event_type: str
    status: str
    payload: dict[str, Any]
    prev_hash: str
    event_hash: str


class ExperimentLog:
    """Append-only event log next to a report.

    Events carry no wall-clock fields, so two runs of the same config write
    the same log.
    """

    def __init__(self, path: Path) -> None:
        self._path = path
        self._path.parent.mkdir(parents=True, exist_ok=True)
        self._path.write_text("", encoding="utf-8")
        self._seq = 0
        self._last = GENESIS

    @property
    def path(self) -> Path:
        return self._path

    def append(
        self,
        event_type: str,
        status: str,
        payload: dict[str, Any],
        cell_id: Optional[int] = None,
    ) -> ExperimentEvent:
        canonical = {
            "seq": self._seq,
            "cell_id": cell_id,
            "event_type": event_type,
            "status": status,
            "payload": payload,
            "prev_hash": self._last,
        }
        event_hash = hashlib.sha256(canonical_json(canonical).encode("utf-8")).hexdigest()
        event = ExperimentEvent(
            seq=self._seq,
            cell_id=cell_id,
            event_type=event_type,
            status=status,
            payload=payload,
            prev_hash=self._last,
            event_hash=event_hash,
        )
        with self._path.open("a", encoding="utf-8") as fp:
            fp.write(json.dumps({**canonical, "event_hash": event_hash}, ensure_ascii=True) + "\n")
        self._seq += 1
        self._last = event_hash
        return event


def verify_chain(path: Path) -> bool:
    """True when every event hashes to its recorded value and links to its predecessor."""

    prev = GENESIS
    with path.open("r", encoding="utf-8") as fp:
        for line in fp:
            row = json.loads(line)
            recorded = row.pop("event_hash")
            if row.get("prev_hash") != prev:
                return False
            if hashlib.sha256(canonical_json(row).encode("utf-8")).hexdigest() != recorded:
                return False
            prev = recorded
    return True
