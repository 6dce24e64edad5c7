"""Experiment configuration and run records.

Configs are flat: every field is a scalar or a flat list.
"""

from __future__ import annotations

from enum import Enum
from typing import Any

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator

MAX_SOLVER_N = 10_000


class Problem(str, Enum):
    SAT = "sat"
    COL = "col"


class Heuristic(str, Enum):
    UC = "uc"
    GUC = "guc"


class SolveMode(str, Enum):
    COUNT = "count"
    DECIDE = "decide"


class ExperimentConfig(BaseModel):
    model_config = ConfigDict(extra="forbid")

    problem: Problem = Problem.SAT
    heuristic: Heuristic = Heuristic.UC
    mode: SolveMode = SolveMode.COUNT
    k: int = Field(default=3, ge=2, le=8)
    n: list[int] = Field(min_length=1)
    params: list[float] = Field(min_length=1)
    samples: int = Field(ge=1)
    seed: int = Field(ge=0)
    prune: float = Field(default=0.0, ge=0.0, le=1e-12)
    distinct: bool = False
    dp: bool = True
    workers: int = Field(default=1, ge=1, le=256)
    out: str = Field(default="reports/experiment.csv", min_length=1)

    @field_validator("n")
    @classmethod
    def validate_sizes(cls, value: list[int]) -> list[int]:
        for n in value:
            if n < 1 or n > MAX_SOLVER_N:
                raise ValueError(f"n={n} is outside [1, {MAX_SOLVER_N}]")
        return value

    @field_validator("params")
    @classmethod
    def validate_params(cls, value: list[float]) -> list[float]:
        if any(p < 0 for p in value):
            raise ValueError("alpha / c values must be nonnegative")
        return value

    @model_validator(mode="after")
    def validate_combination(self) -> "ExperimentConfig":
        if self.problem is Problem.COL:
            if self.heuristic is not Heuristic.GUC:
                raise ValueError("coloring runs use the guc heuristic")
            for n in self.n:
                for c in self.params:
                    if c > n:
                        raise ValueError(f"c={c} exceeds n={n}")
        else:
            for n in self.n:
                if n < self.k:
                    raise ValueError(f"n={n} is smaller than k={self.k}")
        return self

    def cells(self) -> list[tuple[int, int, float]]:
        """Deterministic (cell_id, n, param) grid, n-major."""

        out: list[tuple[int, int, float]] = []
        for n in self.n:
            for param in self.params:
                out.append((len(out), n, param))
        return out

    def canonical(self) -> dict[str, Any]:
        return self.model_dump(mode="json")


class RunRecord(BaseModel):
    model_config = ConfigDict(extra="forbid")

    cell_id: int = Field(ge=0)
    run_index: int = Field(ge=0)
    seed_entropy: list[int] = Field(min_length=3, max_length=3)
    summary: dict[str, Any]
    solution_profile: list[int]
    contradiction_profile: list[int]
    split_profile: list[int]
    wall_seconds: float = Field(ge=0.0)
