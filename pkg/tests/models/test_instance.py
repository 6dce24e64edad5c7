from __future__ import annotations

import pytest

from src.models.instance import (
    CnfInstance,
    Graph,
    InstanceError,
    PartialAssignment,
    ProblemKind,
    canonical_clause,
)


def test_canonical_clause_orders_by_variable() -> None:
    assert canonical_clause([-3, 1, -2]) == (1, -2, -3)


@pytest.mark.parametrize(
    "clause",
    [(1, 1, 2), (1, -1, 2), (1, 2, 0), (1, 2, 9)],
)
def test_cnf_rejects_illegal_clauses(clause: tuple[int, ...]) -> None:
    with pytest.raises(InstanceError):
        CnfInstance(num_vars=4, clauses=(clause,), k=3)


def test_cnf_rejects_wrong_arity() -> None:
    with pytest.raises(InstanceError):
        CnfInstance(num_vars=4, clauses=((1, 2),), k=3)


def test_cnf_alpha(small_cnf: CnfInstance) -> None:
    assert small_cnf.num_clauses == 5
    assert small_cnf.alpha == pytest.approx(1.25)


@pytest.mark.parametrize(
    "edges",
    [((1, 1),), ((1, 2), (2, 1)), ((0, 1),), ((1, 4),)],
)
def test_graph_rejects_illegal_edges(edges: tuple[tuple[int, int], ...]) -> None:
    with pytest.raises(InstanceError):
        Graph(num_vertices=3, edges=edges)


def test_graph_adjacency_and_degree(triangle: Graph) -> None:
    adj = triangle.adjacency()
    assert sorted(adj[1]) == [2, 3]
    assert triangle.average_degree == pytest.approx(2.0)


def test_assignment_rejects_repeats_and_bad_values() -> None:
    with pytest.raises(InstanceError):
        PartialAssignment(pairs=((1, 0), (1, 1)))
    with pytest.raises(InstanceError):
        PartialAssignment(pairs=((1, 2),))
    with pytest.raises(InstanceError):
        PartialAssignment(pairs=((1, 3),), kind=ProblemKind.COL)
    assert PartialAssignment(pairs=((1, 2), (2, 0)), kind=ProblemKind.COL).height == 2
