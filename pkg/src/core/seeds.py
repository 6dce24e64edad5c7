"""Deterministic per-run random streams."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np


@dataclass(frozen=True)
class RunStreams:
    entropy: tuple[int, int, int]
    instance: np.random.Generator
    solver: np.random.Generator


def run_streams(master_seed: int, cell_id: int, run_index: int) -> RunStreams:
    """Independent instance and solver generators for one run.

    The run's SeedSequence entropy is (master_seed, cell_id, run_index); the
    two streams are its first two spawned children.
    """

    entropy = (int(master_seed), int(cell_id), int(run_index))
    instance_seq, solver_seq = np.random.SeedSequence(list(entropy)).spawn(2)
    return RunStreams(
        entropy=entropy,
        instance=np.random.default_rng(instance_seq),
        solver=np.random.default_rng(solver_seq),
    )


def seed_label(master_seed: int, cell_id: int, runs: int) -> str:
    return f"{master_seed}:{cell_id}:0-{max(runs - 1, 0)}"
