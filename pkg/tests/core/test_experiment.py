from __future__ import annotations

import csv
import dataclasses
from pathlib import Path

import pytest

from src.audit.audit_logger import verify_chain
from src.audit.report_builder import REPORT_COLUMNS
from src.config.settings import Settings
from src.core.experiment import CellSpec, run_experiment, simulate_cell, state_visit_means, state_visit_moments
from src.expectation.dense import dp_expect
from src.expectation.kernels import DPProblem
from src.models.experiment import ExperimentConfig, Heuristic, Problem, SolveMode


def _rows(path: Path) -> list[dict[str, str]]:
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0].startswith("# schema:")
    return list(csv.DictReader(lines[1:]))


def _config(**overrides: object) -> ExperimentConfig:
    data: dict[str, object] = {"n": [8], "params": [2.0], "samples": 40, "seed": 3}
    data.update(overrides)
    return ExperimentConfig.model_validate(data)


def test_report_is_reproducible(tmp_path: Path, settings: Settings) -> None:
    config = _config(params=[1.0, 3.0], samples=10)
    first = run_experiment(config, settings, tmp_path / "a.csv")
    second = run_experiment(config, settings, tmp_path / "b.csv")
    assert first.path.read_bytes() == second.path.read_bytes()
    assert (tmp_path / "a.events.jsonl").read_bytes() == (tmp_path / "b.events.jsonl").read_bytes()
    assert verify_chain(tmp_path / "a.events.jsonl")


def test_report_columns_and_rows(tmp_path: Path, settings: Settings) -> None:
    artifact = run_experiment(_config(), settings, tmp_path / "r.csv")
    rows = _rows(artifact.path)
    assert tuple(rows[0].keys()) == REPORT_COLUMNS
    assert artifact.rows_written == len(rows) == 4 + 1 + 3 * 9
    assert {row["status"] for row in rows} == {"ok"}
    assert rows[0]["seed"] == "3:0:0-39"
    rate = next(row for row in rows if row["quantity"] == "leaf_rate")
    assert rate["omega_pred"] != ""
    assert rate["dp_exact"] != ""


def test_worker_count_does_not_change_results() -> None:
    spec = CellSpec(
        cell_id=0, n=10, param=3.0, problem=Problem.SAT, heuristic=Heuristic.GUC,
        mode=SolveMode.COUNT, k=3, distinct=False, seed=5,
    )
    serial = simulate_cell(spec, 6, workers=1)
    parallel = simulate_cell(spec, 6, workers=2)
    assert [r.summary for r in serial] == [r.summary for r in parallel]


def test_failed_cell_is_reported_and_run_continues(tmp_path: Path, settings: Settings) -> None:
    tight = dataclasses.replace(settings, expectation=dataclasses.replace(settings.expectation, max_states=1))
    artifact = run_experiment(_config(n=[8, 10], samples=5), tight, tmp_path / "f.csv")
    assert artifact.failed_cells == [0, 1]
    rows = _rows(artifact.path)
    assert [row["quantity"] for row in rows] == ["cell_failed", "cell_failed"]
    assert {row["status"] for row in rows} == {"failed"}


def test_decide_mode_skips_the_dp(tmp_path: Path, settings: Settings) -> None:
    artifact = run_experiment(_config(mode=SolveMode.DECIDE, samples=5), settings, tmp_path / "d.csv")
    rows = _rows(artifact.path)
    assert all(row["dp_exact"] == "" for row in rows)


def test_monte_carlo_agrees_with_dp(settings: Settings, mc_sigmas: float) -> None:
    spec = CellSpec(
        cell_id=0, n=10, param=2.0, problem=Problem.SAT, heuristic=Heuristic.UC,
        mode=SolveMode.COUNT, k=3, distinct=False, seed=20240601,
    )
    records = simulate_cell(spec, 2000)
    leaves = [r.summary["total_leaves"] for r in records]
    mean = sum(leaves) / len(leaves)
    var = sum((x - mean) ** 2 for x in leaves) / (len(leaves) - 1)
    stderr = (var / len(leaves)) ** 0.5
    exact = dp_expect(10, 20, DPProblem.SAT_UC).total_leaves()
    assert abs(mean - exact) <= mc_sigmas * stderr


def test_state_visit_means_start_at_the_root() -> None:
    spec = CellSpec(
        cell_id=0, n=8, param=2.0, problem=Problem.SAT, heuristic=Heuristic.UC,
        mode=SolveMode.COUNT, k=3, distinct=False, seed=1,
    )
    visits = state_visit_means(spec, 50)
    assert visits[(0, 0, 0, 16)] == pytest.approx(1.0)
    assert all(key[0] <= 8 for key in visits)


@pytest.mark.parametrize(
    ("heuristic", "problem"),
    [(Heuristic.UC, DPProblem.SAT_UC), (Heuristic.GUC, DPProblem.SAT_GUC)],
)
def test_state_visits_match_dp_mass(heuristic: Heuristic, problem: DPProblem) -> None:
    samples = 4000
    spec = CellSpec(
        cell_id=0, n=8, param=2.0, problem=Problem.SAT, heuristic=heuristic,
        mode=SolveMode.COUNT, k=3, distinct=False, seed=11,
    )
    moments = state_visit_moments(spec, samples)
    table = dp_expect(8, 16, problem)
    expected = {
        (layer.height,) + c: value for layer in table.layers for c, value in layer.states()
    }
    worst = 0.0
    for key in set(expected) | set(moments):
        mean, var = moments.get(key, (0.0, 0.0))
        exact = expected.get(key, 0.0)
        floor = max(var, exact)
        assert floor > 0.0, key
        worst = max(worst, abs(mean - exact) / (floor / samples) ** 0.5)
    assert worst < 5.0
    assert set(moments) <= set(expected)


@pytest.mark.slow
@pytest.mark.parametrize(
    ("heuristic", "problem", "alpha"),
    [(Heuristic.UC, DPProblem.SAT_UC, 2.0), (Heuristic.GUC, DPProblem.SAT_GUC, 4.0)],
)
def test_monte_carlo_agrees_with_dp_at_full_sample(
    heuristic: Heuristic, problem: DPProblem, alpha: float, mc_sigmas: float
) -> None:
    spec = CellSpec(
        cell_id=0, n=15, param=alpha, problem=Problem.SAT, heuristic=heuristic,
        mode=SolveMode.COUNT, k=3, distinct=False, seed=7,
    )
    records = simulate_cell(spec, 20_000, workers=4)
    exact = dp_expect(15, int(15 * alpha), problem)
    for quantity, dp_value in (
        ("total_leaves", exact.total_leaves()),
        ("solution_leaves", exact.total_solution_leaves()),
        ("contradiction_leaves", exact.total_contradiction_leaves()),
    ):
        values = [r.summary[quantity] for r in records]
        mean = sum(values) / len(values)
        var = sum((x - mean) ** 2 for x in values) / (len(values) - 1)
        assert abs(mean - dp_value) <= mc_sigmas * (var / len(values)) ** 0.5, quantity
