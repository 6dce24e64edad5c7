"""Monte Carlo experiment cells, reduced against the DP and the growth rates."""

from __future__ import annotations

import logging
import math
import time
from collections import Counter
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass
from pathlib import Path
from typing import Optional

import numpy as np

from src.asymptotics.col import omega_col
from src.asymptotics.guc import omega_guc
from src.asymptotics.uc import omega_c
from src.audit.audit_logger import ExperimentLog
from src.audit.provenance import code_version, config_hash
from src.audit.report_builder import CellHeader, ReportArtifact, ReportBuilder, ReportRow
from src.config.settings import Settings, load_settings
from src.core.run_state import CellStatus, validate_cell_transition
from src.core.seeds import run_streams, seed_label
from src.expectation.dense import dp_expect
from src.expectation.kernels import DPProblem
from src.expectation.table import ExpectationTable
from src.instances.generator import clauses_for_ratio, gen_gnp, gen_ksat
from src.models.experiment import ExperimentConfig, Heuristic, Problem, RunRecord, SolveMode
from src.models.stats import TreeStats
from src.solver.col_engine import dpll_col
from src.solver.sat_engine import dpll_count_sat, dpll_decide_sat

LOGGER = logging.getLogger(__name__)

TOTAL_QUANTITIES = ("total_leaves", "solution_leaves", "contradiction_leaves", "splits")


@dataclass(frozen=True)
class CellSpec:
    cell_id: int
    n: int
    param: float
    problem: Problem
    heuristic: Heuristic
    mode: SolveMode
    k: int
    distinct: bool
    seed: int

    @property
    def dp_param(self) -> float:
        """Clause count M for SAT, average degree c for COL."""

        if self.problem is Problem.SAT:
            return float(clauses_for_ratio(self.n, self.param))
        return self.param


def dp_problem_for(problem: Problem, heuristic: Heuristic) -> DPProblem:
    if problem is Problem.COL:
        return DPProblem.COL_GUC
    return DPProblem.SAT_UC if heuristic is Heuristic.UC else DPProblem.SAT_GUC


def solve_once(spec: CellSpec, run_index: int, trace_states: bool = False) -> TreeStats:
    streams = run_streams(spec.seed, spec.cell_id, run_index)
    if spec.problem is Problem.SAT:
        m = clauses_for_ratio(spec.n, spec.param)
        instance = gen_ksat(spec.n, m, spec.k, seed=streams.instance, distinct=spec.distinct)
        if spec.mode is SolveMode.COUNT:
            _, stats = dpll_count_sat(instance, spec.heuristic, seed=streams.solver, trace_states=trace_states)
        else:
            _, stats = dpll_decide_sat(instance, spec.heuristic, seed=streams.solver, trace_states=trace_states)
        return stats
    graph = gen_gnp(spec.n, spec.param, seed=streams.instance)
    _, stats = dpll_col(graph, spec.mode, seed=streams.solver, trace_states=trace_states)
    return stats


def simulate_run(spec: CellSpec, run_index: int) -> RunRecord:
    started = time.perf_counter()
    stats = solve_once(spec, run_index)
    return RunRecord(
        cell_id=spec.cell_id,
        run_index=run_index,
        seed_entropy=[spec.seed, spec.cell_id, run_index],
        summary=stats.summary(),
        solution_profile=stats.solution_leaves,
        contradiction_profile=stats.contradiction_leaves,
        split_profile=[a + b for a, b in zip(stats.splits2, stats.splits3)],
        wall_seconds=time.perf_counter() - started,
    )


def simulate_cell(spec: CellSpec, samples: int, workers: int = 1) -> list[RunRecord]:
    """All runs of one cell, ordered by run index whatever the worker count."""

    if workers <= 1:
        return [simulate_run(spec, r) for r in range(samples)]
    records: dict[int, RunRecord] = {}
    with ProcessPoolExecutor(max_workers=workers) as pool:
        futures = {pool.submit(simulate_run, spec, r): r for r in range(samples)}
        for future in as_completed(futures):
            records[futures[future]] = future.result()
    return [records[r] for r in range(samples)]


def state_visit_moments(spec: CellSpec, samples: int) -> dict[tuple[int, ...], tuple[float, float]]:
    """Mean and sample variance of visits per (height, C1, C2, C3) over traced runs.

    Runs that never reach a state count as zero visits.
    """

    totals: Counter[tuple[int, ...]] = Counter()
    squares: Counter[tuple[int, ...]] = Counter()
    for run_index in range(samples):
        stats = solve_once(spec, run_index, trace_states=True)
        for key, count in (stats.state_visits or {}).items():
            totals[key] += count
            squares[key] += count * count
    out = {}
    for key, total in totals.items():
        mean = total / samples
        var = (squares[key] - samples * mean * mean) / (samples - 1) if samples > 1 else 0.0
        out[key] = (mean, max(var, 0.0))
    return out


def state_visit_means(spec: CellSpec, samples: int) -> dict[tuple[int, ...], float]:
    """Mean visits per (height, C1, C2, C3); estimates L(C, T) of the expectation table."""

    return {key: mean for key, (mean, _) in state_visit_moments(spec, samples).items()}


def _mean_stderr(values: np.ndarray) -> tuple[float, float]:
    mean = float(values.mean(axis=0))
    if values.shape[0] < 2:
        return mean, float("nan")
    return mean, float(values.std(axis=0, ddof=1) / math.sqrt(values.shape[0]))


def predicted_rate(spec: CellSpec) -> Optional[float]:
    """Asymptotic growth rate matching the cell: bits for SAT, nats for COL."""

    if spec.param <= 0:
        return None
    if spec.problem is Problem.COL:
        return omega_col(spec.param).value
    if spec.heuristic is Heuristic.GUC:
        return omega_guc(spec.param).value if spec.k == 3 else None
    return omega_c(spec.param, spec.k).value


def _rate(total: float, n: int, problem: Problem) -> Optional[float]:
    if total <= 0:
        return None
    return math.log(total) / n if problem is Problem.COL else math.log2(total) / n


def cell_rows(
    spec: CellSpec,
    records: list[RunRecord],
    table: Optional[ExpectationTable],
    omega: Optional[float],
) -> list[ReportRow]:
    rows: list[ReportRow] = []
    solutions = np.array([r.solution_profile for r in records], dtype=float)
    contradictions = np.array([r.contradiction_profile for r in records], dtype=float)
    splits = np.array([r.split_profile for r in records], dtype=float)
    totals = {
        "total_leaves": solutions.sum(axis=1) + contradictions.sum(axis=1),
        "solution_leaves": solutions.sum(axis=1),
        "contradiction_leaves": contradictions.sum(axis=1),
        "splits": splits.sum(axis=1),
    }
    dp_totals: dict[str, Optional[float]] = {q: None for q in TOTAL_QUANTITIES}
    if table is not None:
        dp_totals = {
            "total_leaves": table.total_leaves(),
            "solution_leaves": table.total_solution_leaves(),
            "contradiction_leaves": table.total_contradiction_leaves(),
            "splits": table.total_splits(),
        }
    for quantity in TOTAL_QUANTITIES:
        mean, stderr = _mean_stderr(totals[quantity])
        rows.append(ReportRow(quantity=quantity, mc_mean=mean, mc_stderr=stderr, dp_exact=dp_totals[quantity]))

    mc_leaves = float(totals["total_leaves"].mean())
    rows.append(
        ReportRow(
            quantity="leaf_rate",
            mc_mean=_rate(mc_leaves, spec.n, spec.problem),
            dp_exact=_rate(table.total_leaves(), spec.n, spec.problem) if table is not None else None,
            omega_pred=omega,
        )
    )

    profiles = (
        ("L_S", solutions, table.solution_leaves if table is not None else None),
        ("L_C", contradictions, table.contradiction_leaves if table is not None else None),
        ("splits", splits, (table.splits2 + table.splits3) if table is not None else None),
    )
    for quantity, samples, exact in profiles:
        for height in range(spec.n + 1):
            mean, stderr = _mean_stderr(samples[:, height])
            rows.append(
                ReportRow(
                    quantity=quantity,
                    height=height,
                    mc_mean=mean,
                    mc_stderr=stderr,
                    dp_exact=float(exact[height]) if exact is not None else None,
                )
            )
    return rows


def _dp_for(spec: CellSpec, config: ExperimentConfig, settings: Settings) -> Optional[ExpectationTable]:
    if not config.dp or spec.k != 3 or spec.mode is not SolveMode.COUNT:
        return None
    if spec.n > settings.harness.dp_max_n:
        return None
    exp = settings.expectation
    return dp_expect(
        spec.n,
        spec.dp_param,
        dp_problem_for(spec.problem, spec.heuristic),
        prune=config.prune,
        c1_cap=exp.c1_cap,
        max_states=exp.max_states,
        log_space_above_n=exp.log_space_above_n,
        keep_layers=False,
    )


def run_experiment(
    config: ExperimentConfig,
    settings: Optional[Settings] = None,
    out: Optional[Path] = None,
) -> ReportArtifact:
    """Run every cell, writing one tidy CSV flushed per cell.

    A cell that raises is written as a single ``failed`` marker row and the
    remaining cells still run.
    """

    settings = settings or load_settings()
    out_path = out or Path(config.out)
    digest = config_hash(config.canonical())
    version = code_version()
    events = ExperimentLog(out_path.with_suffix(".events.jsonl"))
    events.append("experiment_started", "RUNNING", {"config_hash": digest, "cells": len(config.cells())})

    with ReportBuilder(out_path) as report:
        for cell_id, n, param in config.cells():
            spec = CellSpec(
                cell_id=cell_id,
                n=n,
                param=param,
                problem=config.problem,
                heuristic=config.heuristic,
                mode=config.mode,
                k=config.k,
                distinct=config.distinct,
                seed=config.seed,
            )
            header = CellHeader(
                cell_id=cell_id,
                problem=config.problem.value,
                heuristic=config.heuristic.value,
                mode=config.mode.value,
                n=n,
                param=param,
                samples=config.samples,
                seed=seed_label(config.seed, cell_id, config.samples),
                code_version=version,
                config_hash=digest,
            )
            status = CellStatus.PENDING
            validate_cell_transition(status, CellStatus.RUNNING)
            status = CellStatus.RUNNING
            LOGGER.info("cell=%d n=%d param=%s status=%s", cell_id, n, param, status.value)
            events.append("cell_started", status.value, {"n": n, "param": param}, cell_id=cell_id)
            try:
                records = simulate_cell(spec, config.samples, config.workers)
                table = _dp_for(spec, config, settings)
                rows = cell_rows(spec, records, table, predicted_rate(spec))
            except Exception as exc:  # noqa: BLE001
                validate_cell_transition(status, CellStatus.FAILED)
                status = CellStatus.FAILED
                LOGGER.error("cell=%d status=%s error=%s", cell_id, status.value, exc)
                events.append("cell_failed", status.value, {"error": str(exc)}, cell_id=cell_id)
                report.write_cell(header, [ReportRow(quantity="cell_failed")], status.report_label)
                continue
            validate_cell_transition(status, CellStatus.DONE)
            status = CellStatus.DONE
            report.write_cell(header, rows, status.report_label)
            events.append("cell_done", status.value, {"rows": len(rows)}, cell_id=cell_id)
            LOGGER.info("cell=%d status=%s rows=%d", cell_id, status.value, len(rows))

    artifact = report.artifact
    events.append(
        "experiment_finished",
        "FAILED" if artifact.failed_cells else "DONE",
        {"rows": artifact.rows_written, "failed_cells": artifact.failed_cells},
    )
    return artifact
