"""Provenance stamps carried by every report row."""

from __future__ import annotations

import hashlib
import json
from typing import Any

from src import __version__


def canonical_json(payload: dict[str, Any]) -> str:
    return json.dumps(payload, sort_keys=True, ensure_ascii=True, separators=(",", ":"))


def config_hash(payload: dict[str, Any]) -> str:
    return hashlib.sha256(canonical_json(payload).encode("utf-8")).hexdigest()


def code_version() -> str:
    return __version__
