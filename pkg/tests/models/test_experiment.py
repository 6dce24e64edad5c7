from __future__ import annotations

import pytest
from pydantic import ValidationError

from src.models.experiment import ExperimentConfig, Heuristic, Problem


def _config(**overrides: object) -> ExperimentConfig:
    data: dict[str, object] = {"n": [10, 12], "params": [2.0, 4.0], "samples": 5, "seed": 1}
    data.update(overrides)
    return ExperimentConfig.model_validate(data)


def test_cells_are_n_major() -> None:
    assert _config().cells() == [(0, 10, 2.0), (1, 10, 4.0), (2, 12, 2.0), (3, 12, 4.0)]


def test_unknown_keys_are_rejected() -> None:
    with pytest.raises(ValidationError):
        _config(colour="red")


def test_coloring_needs_guc() -> None:
    with pytest.raises(ValidationError):
        _config(problem=Problem.COL, heuristic=Heuristic.UC)
    assert _config(problem=Problem.COL, heuristic=Heuristic.GUC).problem is Problem.COL


def test_degree_above_n_rejected() -> None:
    with pytest.raises(ValidationError):
        _config(problem=Problem.COL, heuristic=Heuristic.GUC, params=[11.0])


def test_prune_is_bounded() -> None:
    with pytest.raises(ValidationError):
        _config(prune=1e-6)


def test_canonical_is_json_ready() -> None:
    canonical = _config().canonical()
    assert canonical["problem"] == "sat"
    assert canonical["n"] == [10, 12]
