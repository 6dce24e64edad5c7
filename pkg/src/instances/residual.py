"""Residual instances under partial assignments."""

from __future__ import annotations

from src.models.instance import (
    CnfInstance,
    Graph,
    InstanceError,
    PartialAssignment,
    ProblemKind,
    ResidualState,
)

NUM_COLORS = 3


def reduce_cnf(instance: CnfInstance, assignment: PartialAssignment) -> ResidualState:
    if assignment.kind is not ProblemKind.SAT:
        raise InstanceError("a coloring assignment cannot reduce a formula")
    values = assignment.as_dict()
    if any(v > instance.num_vars for v in values):
        raise InstanceError("assignment references a variable outside the formula")
    counts = [0] * (instance.k + 1)
    surviving: list[tuple[int, ...]] = []
    for clause in instance.clauses:
        remaining: list[int] = []
        satisfied = False
        for lit in clause:
            value = values.get(abs(lit))
            if value is None:
                remaining.append(lit)
            elif (value == 1) == (lit > 0):
                satisfied = True
                break
        if satisfied:
            continue
        counts[len(remaining)] += 1
        surviving.append(tuple(remaining))
    return ResidualState(
        kind=ProblemKind.SAT,
        counts=tuple(counts),
        unassigned=instance.num_vars - assignment.height,
        clauses=tuple(surviving),
        violated=counts[0] > 0,
    )


def reduce_graph(graph: Graph, assignment: PartialAssignment) -> ResidualState:
    if assignment.kind is not ProblemKind.COL:
        raise InstanceError("a truth assignment cannot reduce a graph")
    colors = assignment.as_dict()
    if any(v > graph.num_vertices for v in colors):
        raise InstanceError("assignment references a vertex outside the graph")
    lists = {v: set(range(NUM_COLORS)) for v in range(1, graph.num_vertices + 1) if v not in colors}
    clash = False
    for u, v in graph.edges:
        cu, cv = colors.get(u), colors.get(v)
        if cu is not None and cv is not None:
            clash = clash or cu == cv
        elif cu is not None:
            lists[v].discard(cu)
        elif cv is not None:
            lists[u].discard(cv)
    counts = [0] * (NUM_COLORS + 1)
    for available in lists.values():
        counts[len(available)] += 1
    return ResidualState(
        kind=ProblemKind.COL,
        counts=tuple(counts),
        unassigned=graph.num_vertices - assignment.height,
        color_lists={v: tuple(sorted(a)) for v, a in lists.items()},
        violated=clash or counts[0] > 0,
    )


def reduce(instance: CnfInstance | Graph, assignment: PartialAssignment) -> ResidualState:
    """Residual state F_A; violated instances are flagged, not rejected."""

    if isinstance(instance, CnfInstance):
        return reduce_cnf(instance, assignment)
    return reduce_graph(instance, assignment)
