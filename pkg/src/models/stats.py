"""Search-tree statistics recorded by the instrumented solvers."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from enum import Enum
from typing import Any, Optional

STATS_CSV_COLUMNS = ("height", "solution_leaves", "contradiction_leaves", "splits2", "splits3")


class BranchKind(str, Enum):
    UNIT = "unit"
    SPLIT = "split"


@dataclass(frozen=True)
class BranchDecision:
    """Children of one tree node, in exploration order.

    Each child is a (variable, value) pair for SAT or a (vertex, color) pair
    for COL. ``clause`` is the index of the clause that drove the choice
    (unit clause or GUC clause), when there is one.
    """

    kind: BranchKind
    children: tuple[tuple[int, int], ...]
    clause: Optional[int] = None

    @property
    def arity(self) -> int:
        return len(self.children)


@dataclass
class TreeStats:
    num_vars: int
    solution_leaves: list[int] = field(default_factory=list)
    contradiction_leaves: list[int] = field(default_factory=list)
    splits2: list[int] = field(default_factory=list)
    splits3: list[int] = field(default_factory=list)
    nodes: list[int] = field(default_factory=list)
    count: int = 0
    halted: bool = False
    state_visits: Optional[Counter[tuple[int, int, int, int]]] = None

    def __post_init__(self) -> None:
        size = self.num_vars + 1
        for name in ("solution_leaves", "contradiction_leaves", "splits2", "splits3", "nodes"):
            if not getattr(self, name):
                setattr(self, name, [0] * size)

    @property
    def total_solution_leaves(self) -> int:
        return sum(self.solution_leaves)

    @property
    def total_contradiction_leaves(self) -> int:
        return sum(self.contradiction_leaves)

    @property
    def total_leaves(self) -> int:
        return self.total_solution_leaves + self.total_contradiction_leaves

    @property
    def total_splits(self) -> int:
        return sum(self.splits2) + sum(self.splits3)

    @property
    def total_nodes(self) -> int:
        return sum(self.nodes)

    def accounting_holds(self) -> bool:
        """Leaves = 2-way splits + 2 * 3-way splits + 1 on a completed tree."""

        return self.total_leaves == sum(self.splits2) + 2 * sum(self.splits3) + 1

    def weighted_solutions(self) -> int:
        """Sum of 2^(N - height) over solution leaves (#DPLL-SAT credit)."""

        return sum(leaves << (self.num_vars - h) for h, leaves in enumerate(self.solution_leaves))

    def to_rows(self) -> list[tuple[int, int, int, int, int]]:
        return [
            (
                h,
                self.solution_leaves[h],
                self.contradiction_leaves[h],
                self.splits2[h],
                self.splits3[h],
            )
            for h in range(self.num_vars + 1)
        ]

    def summary(self) -> dict[str, Any]:
        return {
            "count": self.count,
            "total_leaves": self.total_leaves,
            "solution_leaves": self.total_solution_leaves,
            "contradiction_leaves": self.total_contradiction_leaves,
            "splits": self.total_splits,
            "nodes": self.total_nodes,
            "halted": self.halted,
        }
