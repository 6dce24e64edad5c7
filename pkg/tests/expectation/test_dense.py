from __future__ import annotations

import numpy as np
import pytest

from src.asymptotics.uc import omega_c
from src.expectation.dense import DPMemoryError, dp_expect, reachable_states
from src.expectation.generating import first_moment, s0
from src.expectation.kernels import DPProblem
from src.expectation.sparse import dp_expect_sparse


def test_no_clauses_is_a_single_solution_leaf() -> None:
    table = dp_expect(5, 0, DPProblem.SAT_UC)
    assert table.solution_leaves[0] == pytest.approx(1.0)
    assert table.total_leaves() == pytest.approx(1.0)


@pytest.mark.parametrize(
    ("problem", "n", "param"),
    [
        (DPProblem.SAT_UC, 12, 30),
        (DPProblem.SAT_GUC, 12, 30),
        (DPProblem.COL_GUC, 10, 4.0),
    ],
)
def test_leaves_balance_splits(problem: DPProblem, n: int, param: float) -> None:
    table = dp_expect(n, param, problem)
    expected = table.splits2.sum() + 2.0 * table.splits3.sum() + 1.0
    assert table.total_leaves() == pytest.approx(expected, rel=1e-10)


@pytest.mark.parametrize("problem", [DPProblem.SAT_UC, DPProblem.SAT_GUC])
def test_weighted_solutions_equal_first_moment(problem: DPProblem) -> None:
    table = dp_expect(10, 20, problem)
    assert s0(table, 10) == pytest.approx(70.869769, rel=1e-6)
    assert s0(table, 10) == pytest.approx(first_moment(10, 20), rel=1e-9)


@pytest.mark.parametrize(
    ("problem", "param"),
    [(DPProblem.SAT_UC, 12.0), (DPProblem.SAT_GUC, 12.0), (DPProblem.COL_GUC, 3.0)],
)
def test_dense_and_sparse_agree(problem: DPProblem, param: float) -> None:
    dense = dp_expect(6, param, problem)
    sparse = dp_expect_sparse(6, param, problem)
    for height in range(7):
        for c, value in sparse.layers[height].items():
            assert dense.value(c, height) == pytest.approx(value, rel=1e-12)
    np.testing.assert_allclose(dense.solution_leaves, [float(v) for v in sparse.solution], rtol=1e-12, atol=1e-300)
    np.testing.assert_allclose(dense.splits3, [float(v) for v in sparse.splits3], rtol=1e-12, atol=1e-300)


def test_log_space_matches_linear_space() -> None:
    linear = dp_expect(20, 60, DPProblem.SAT_GUC)
    rescaled = dp_expect(20, 60, DPProblem.SAT_GUC, log_space_above_n=5)
    np.testing.assert_allclose(rescaled.log2_nodes, linear.log2_nodes, rtol=1e-12, atol=1e-9)
    np.testing.assert_allclose(rescaled.log2_solution, linear.log2_solution, rtol=1e-12, atol=1e-9)


def test_pruning_reports_discarded_mass() -> None:
    exact = dp_expect(20, 80, DPProblem.SAT_UC)
    pruned = dp_expect(20, 80, DPProblem.SAT_UC, prune=1e-12)
    assert float(pruned.discarded.sum()) >= 0.0
    assert pruned.total_leaves() == pytest.approx(exact.total_leaves(), rel=1e-6)


def test_c1_cap_drops_mass() -> None:
    table = dp_expect(12, 60, DPProblem.SAT_UC, c1_cap=1)
    assert float(table.discarded.sum()) > 0.0


def test_state_budget() -> None:
    with pytest.raises(DPMemoryError):
        dp_expect(30, 200, DPProblem.SAT_UC, max_states=10)


def test_bad_arguments() -> None:
    with pytest.raises(ValueError):
        dp_expect(10, 2.5, DPProblem.SAT_UC)
    with pytest.raises(ValueError):
        dp_expect(10, 20, DPProblem.SAT_UC, prune=1e-3)


def test_reachable_states_start_at_root() -> None:
    table = dp_expect(6, 10, DPProblem.SAT_UC)
    states = reachable_states(table)
    assert states[0] == ((0, 0, 10), 0)
    assert all(height < 6 for _, height in states)
    assert len(reachable_states(table, limit=3)) == 3


def test_profile_csv(tmp_path) -> None:
    table = dp_expect(5, 10, DPProblem.SAT_GUC)
    path = tmp_path / "profile.csv"
    table.write_profile_csv(path)
    lines = path.read_text(encoding="utf-8").splitlines()
    assert lines[0].startswith("# schema:")
    assert lines[1] == "T,L_S,L_C,splits2,splits3,nodes,discarded"
    assert len(lines) == 2 + 6


@pytest.mark.slow
def test_finite_size_rate_approaches_growth_rate() -> None:
    target = omega_c(10.0).value
    gaps = []
    for n in (10, 20, 30, 40, 50):
        table = dp_expect(n, 10 * n, DPProblem.SAT_UC, prune=1e-30, keep_layers=False)
        gaps.append(abs(target - table.log2_total_leaves() / n))
    assert all(later < earlier for earlier, later in zip(gaps, gaps[1:]))
    assert gaps[-1] < 0.15
