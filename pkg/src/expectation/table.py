"""Expectation tables: per-height clause-vector masses and leaf profiles."""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterator, Optional

import numpy as np

from src.expectation.kernels import ClauseVector, DPProblem

STATES_SCHEMA = "# schema: dpll-expectation-states/1"
PROFILE_SCHEMA = "# schema: dpll-expectation-profile/1"


def fmt(value: float) -> str:
    return "%.17g" % value


def log2_of(value: float) -> float:
    return float(np.log2(value)) if value > 0 else float("-inf")


@dataclass
class StateLayer:
    """L(C, T) = values[C - offset] * 2**log2_scale inside a bounding box."""

    height: int
    offset: tuple[int, int, int]
    values: np.ndarray
    log2_scale: float = 0.0

    def value(self, c: ClauseVector) -> float:
        idx = tuple(ci - oi for ci, oi in zip(c, self.offset))
        if any(i < 0 or i >= s for i, s in zip(idx, self.values.shape)):
            return 0.0
        return float(self.values[idx] * np.exp2(self.log2_scale))

    def states(self) -> Iterator[tuple[ClauseVector, float]]:
        scale = np.exp2(self.log2_scale)
        o1, o2, o3 = self.offset
        for i, j, k in zip(*np.nonzero(self.values)):
            yield (int(i) + o1, int(j) + o2, int(k) + o3), float(self.values[i, j, k] * scale)

    def log2_total(self) -> float:
        return log2_of(float(self.values.sum())) + self.log2_scale

    def total(self) -> float:
        return float(np.exp2(self.log2_total()))


@dataclass
class ExpectationTable:
    n: int
    problem: DPProblem
    param: float
    prune: float
    c1_cap: int
    layers: list[StateLayer] = field(default_factory=list)
    log2_solution: np.ndarray = field(default_factory=lambda: np.zeros(0))
    log2_contradiction: np.ndarray = field(default_factory=lambda: np.zeros(0))
    log2_splits2: np.ndarray = field(default_factory=lambda: np.zeros(0))
    log2_splits3: np.ndarray = field(default_factory=lambda: np.zeros(0))
    log2_nodes: np.ndarray = field(default_factory=lambda: np.zeros(0))
    discarded: np.ndarray = field(default_factory=lambda: np.zeros(0))

    @property
    def solution_leaves(self) -> np.ndarray:
        return np.exp2(self.log2_solution)

    @property
    def contradiction_leaves(self) -> np.ndarray:
        return np.exp2(self.log2_contradiction)

    @property
    def splits2(self) -> np.ndarray:
        return np.exp2(self.log2_splits2)

    @property
    def splits3(self) -> np.ndarray:
        return np.exp2(self.log2_splits3)

    @property
    def nodes(self) -> np.ndarray:
        return np.exp2(self.log2_nodes)

    def log2_total_leaves(self) -> float:
        both = np.concatenate([self.log2_solution, self.log2_contradiction])
        return float(np.logaddexp2.reduce(both))

    def total_leaves(self) -> float:
        return float(np.exp2(self.log2_total_leaves()))

    def total_solution_leaves(self) -> float:
        return float(np.exp2(np.logaddexp2.reduce(self.log2_solution)))

    def total_contradiction_leaves(self) -> float:
        return float(np.exp2(np.logaddexp2.reduce(self.log2_contradiction)))

    def total_splits(self) -> float:
        both = np.concatenate([self.log2_splits2, self.log2_splits3])
        return float(np.exp2(np.logaddexp2.reduce(both)))

    def layer(self, height: int) -> StateLayer:
        if not self.layers:
            raise LookupError("table was built without state layers")
        return self.layers[height]

    def value(self, c: ClauseVector, height: int) -> float:
        return self.layer(height).value(c)

    def write_states_csv(self, path: Path) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8", newline="") as fp:
            fp.write(STATES_SCHEMA + "\n")
            writer = csv.writer(fp, lineterminator="\n")
            writer.writerow(["T", "C1", "C2", "C3", "L"])
            for layer in self.layers:
                for (c1, c2, c3), value in layer.states():
                    writer.writerow([layer.height, c1, c2, c3, fmt(value)])

    def write_profile_csv(self, path: Path) -> None:
        path.parent.mkdir(parents=True, exist_ok=True)
        with path.open("w", encoding="utf-8", newline="") as fp:
            fp.write(PROFILE_SCHEMA + "\n")
            writer = csv.writer(fp, lineterminator="\n")
            writer.writerow(["T", "L_S", "L_C", "splits2", "splits3", "nodes", "discarded"])
            for t in range(self.n + 1):
                writer.writerow(
                    [
                        t,
                        fmt(self.solution_leaves[t]),
                        fmt(self.contradiction_leaves[t]),
                        fmt(self.splits2[t]),
                        fmt(self.splits3[t]),
                        fmt(self.nodes[t]),
                        fmt(self.discarded[t]),
                    ]
                )

    def summary(self) -> dict[str, Optional[float]]:
        return {
            "n": self.n,
            "param": self.param,
            "total_leaves": self.total_leaves(),
            "solution_leaves": self.total_solution_leaves(),
            "contradiction_leaves": self.total_contradiction_leaves(),
            "splits": self.total_splits(),
            "log2_leaves_per_n": self.log2_total_leaves() / self.n,
            "discarded": float(self.discarded.sum()),
        }
