from __future__ import annotations

import pytest

from src.instances.generator import gen_gnp
from src.models.experiment import SolveMode
from src.models.instance import Graph
from src.solver.brute_force import brute_force_col_count
from src.solver.col_engine import dpll_col


@pytest.mark.parametrize("seed", range(12))
def test_count_matches_enumeration(seed: int) -> None:
    n = 5 + seed % 5
    graph = gen_gnp(n, 2.0 + (seed % 4), seed=seed)
    count, stats = dpll_col(graph, SolveMode.COUNT, seed=seed)
    assert count == brute_force_col_count(graph)
    assert stats.total_solution_leaves == count
    assert stats.accounting_holds()


def test_triangle_and_k4(triangle: Graph, k4: Graph) -> None:
    assert dpll_col(triangle, seed=0)[0] == 6
    count, stats = dpll_col(k4, seed=0)
    assert count == 0
    assert stats.accounting_holds()


def test_edgeless_graph() -> None:
    graph = Graph(num_vertices=3, edges=())
    count, stats = dpll_col(graph, seed=5)
    assert count == 27
    assert sum(stats.splits3) == 13


def test_decide_mode(triangle: Graph, k4: Graph) -> None:
    colorable, stats = dpll_col(triangle, SolveMode.DECIDE, seed=1)
    assert colorable is True
    assert stats.total_solution_leaves == 1
    assert dpll_col(k4, SolveMode.DECIDE, seed=1)[0] is False


def test_trace_counts_root_state(triangle: Graph) -> None:
    _, stats = dpll_col(triangle, seed=0, trace_states=True)
    assert stats.state_visits is not None
    assert stats.state_visits[(0, 0, 0, 3)] == 1
