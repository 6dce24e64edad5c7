"""Loader for flat experiment config files."""

from __future__ import annotations

from pathlib import Path
from typing import Any

import yaml
from pydantic import ValidationError

from src.models.experiment import ExperimentConfig


class ExperimentConfigError(RuntimeError):
    """Raised when an experiment config cannot be loaded."""


def parse_key_values(text: str) -> dict[str, Any]:
    """``key = value`` lines; values are YAML scalars or flow lists, # starts a comment."""

    data: dict[str, Any] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ExperimentConfigError(f"line {lineno}: expected key = value")
        key, value = (part.strip() for part in line.split("=", 1))
        if not key:
            raise ExperimentConfigError(f"line {lineno}: empty key")
        if key in data:
            raise ExperimentConfigError(f"line {lineno}: duplicate key {key}")
        try:
            data[key] = yaml.safe_load(value) if value else None
        except yaml.YAMLError as exc:
            raise ExperimentConfigError(f"line {lineno}: cannot parse value for {key}: {exc}") from exc
    return data


def load_experiment_config(path: Path) -> ExperimentConfig:
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ExperimentConfigError(f"cannot read config {path}: {exc}") from exc
    if path.suffix in {".yaml", ".yml"}:
        try:
            raw = yaml.safe_load(text) or {}
        except yaml.YAMLError as exc:
            raise ExperimentConfigError(f"invalid YAML in {path}: {exc}") from exc
        if not isinstance(raw, dict):
            raise ExperimentConfigError("config root must be a mapping")
    else:
        raw = parse_key_values(text)
    for key in ("n", "params"):
        if key in raw and not isinstance(raw[key], list):
            raw[key] = [raw[key]]
    try:
        return ExperimentConfig.model_validate(raw)
    except ValidationError as exc:
        raise ExperimentConfigError(f"invalid experiment config {path}: {exc}") from exc
