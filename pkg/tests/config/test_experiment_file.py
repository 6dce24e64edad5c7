from __future__ import annotations

from pathlib import Path

import pytest

from src.config.experiment_file import ExperimentConfigError, load_experiment_config, parse_key_values
from src.models.experiment import Heuristic, Problem

EXAMPLE = Path(__file__).resolve().parents[2] / "config" / "experiment_example.cfg"


def test_example_config_loads() -> None:
    config = load_experiment_config(EXAMPLE)
    assert config.problem is Problem.SAT
    assert config.n == [10, 12]
    assert config.samples == 2000


def test_key_values_parse_scalars_and_lists() -> None:
    data = parse_key_values("n = [8, 9]  # sizes\nparams = 2.5\ndp = false\n\n# note\nout = r.csv\n")
    assert data == {"n": [8, 9], "params": 2.5, "dp": False, "out": "r.csv"}


@pytest.mark.parametrize("text", ["n 8\n", "= 3\n", "n = 8\nn = 9\n", "n = [8\n"])
def test_key_value_errors(text: str) -> None:
    with pytest.raises(ExperimentConfigError):
        parse_key_values(text)


def test_scalar_sizes_become_lists(tmp_path: Path) -> None:
    path = tmp_path / "exp.cfg"
    path.write_text("problem = col\nheuristic = guc\nn = 9\nparams = 2.0\nsamples = 3\nseed = 1\n", encoding="utf-8")
    config = load_experiment_config(path)
    assert config.n == [9]
    assert config.heuristic is Heuristic.GUC


def test_yaml_configs(tmp_path: Path) -> None:
    path = tmp_path / "exp.yaml"
    path.write_text("n: [8]\nparams: [1.0]\nsamples: 2\nseed: 0\n", encoding="utf-8")
    assert load_experiment_config(path).samples == 2


def test_invalid_values_are_reported(tmp_path: Path) -> None:
    path = tmp_path / "exp.cfg"
    path.write_text("n = [8]\nparams = [1.0]\nsamples = 0\nseed = 0\n", encoding="utf-8")
    with pytest.raises(ExperimentConfigError):
        load_experiment_config(path)
    with pytest.raises(ExperimentConfigError):
        load_experiment_config(tmp_path / "missing.cfg")
