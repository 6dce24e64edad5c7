"""Problem instances, partial assignments and residual states."""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

Clause = tuple[int, ...]
Edge = tuple[int, int]


class InstanceError(RuntimeError):
    """Raised when an instance or assignment violates its invariants."""


class ProblemKind(str, Enum):
    SAT = "sat"
    COL = "col"


def canonical_clause(literals: list[int] | tuple[int, ...]) -> Clause:
    """Order literals by variable index."""

    return tuple(sorted(literals, key=abs))


def validate_clause(clause: Clause, num_vars: int, k: int | None = None) -> None:
    if k is not None and len(clause) != k:
        raise InstanceError(f"clause {clause} has {len(clause)} literals, expected {k}")
    variables = [abs(lit) for lit in clause]
    if any(lit == 0 for lit in clause):
        raise InstanceError(f"clause {clause} contains literal 0")
    if any(v > num_vars for v in variables):
        raise InstanceError(f"clause {clause} references a variable above {num_vars}")
    if len(set(variables)) != len(variables):
        # covers both repeated literals and complementary pairs
        raise InstanceError(f"clause {clause} repeats a variable")


@dataclass(frozen=True)
class CnfInstance:
    num_vars: int
    clauses: tuple[Clause, ...]
    k: int

    def __post_init__(self) -> None:
        if self.num_vars < 1:
            raise InstanceError("num_vars must be positive")
        if self.k < 1:
            raise InstanceError("k must be positive")
        for clause in self.clauses:
            validate_clause(clause, self.num_vars, self.k)

    @property
    def num_clauses(self) -> int:
        return len(self.clauses)

    @property
    def alpha(self) -> float:
        return self.num_clauses / self.num_vars


@dataclass(frozen=True)
class Graph:
    num_vertices: int
    edges: tuple[Edge, ...]

    def __post_init__(self) -> None:
        if self.num_vertices < 1:
            raise InstanceError("num_vertices must be positive")
        seen: set[Edge] = set()
        for u, v in self.edges:
            if u == v:
                raise InstanceError(f"self-loop on vertex {u}")
            if not (1 <= u <= self.num_vertices and 1 <= v <= self.num_vertices):
                raise InstanceError(f"edge ({u}, {v}) is out of range")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InstanceError(f"duplicate edge ({u}, {v})")
            seen.add(key)

    @property
    def num_edges(self) -> int:
        return len(self.edges)

    @property
    def average_degree(self) -> float:
        return 2.0 * self.num_edges / self.num_vertices

    def adjacency(self) -> list[list[int]]:
        """Neighbour lists indexed by 1-based vertex (index 0 unused)."""

        adj: list[list[int]] = [[] for _ in range(self.num_vertices + 1)]
        for u, v in self.edges:
            adj[u].append(v)
            adj[v].append(u)
        return adj


@dataclass(frozen=True)
class PartialAssignment:
    """Ordered (variable, value) pairs; values are 0/1 for SAT, colors 0..2 for COL."""

    pairs: tuple[tuple[int, int], ...]
    kind: ProblemKind = ProblemKind.SAT

    def __post_init__(self) -> None:
        names = [name for name, _ in self.pairs]
        if len(set(names)) != len(names):
            raise InstanceError("assignment repeats a variable or vertex")
        limit = 2 if self.kind is ProblemKind.SAT else 3
        for name, value in self.pairs:
            if name < 1:
                raise InstanceError(f"invalid variable or vertex {name}")
            if not 0 <= value < limit:
                raise InstanceError(f"invalid value {value} for {name}")

    @property
    def height(self) -> int:
        return len(self.pairs)

    def as_dict(self) -> dict[int, int]:
        return dict(self.pairs)


@dataclass(frozen=True)
class ResidualState:
    """Clause vector of a residual instance.

    ``counts[j]`` is the number of j-clauses (SAT) or of uncolored vertices
    with j available colors (COL); ``counts[0]`` counts violated ones.
    """

    kind: ProblemKind
    counts: tuple[int, ...]
    unassigned: int
    clauses: tuple[Clause, ...] = ()
    color_lists: dict[int, tuple[int, ...]] = field(default_factory=dict)
    violated: bool = False

    @property
    def clause_vector(self) -> tuple[int, int, int]:
        padded = tuple(self.counts) + (0, 0, 0, 0)
        return padded[1], padded[2], padded[3]
