from __future__ import annotations

import math

import pytest

from src.expectation.dense import dp_expect
from src.expectation.generating import (
    RecursionCheckError,
    RecursionVariant,
    check_recursion,
    default_points,
    eval_G,
    log2_eval_G,
    s0,
)
from src.expectation.kernels import DPProblem


@pytest.fixture(scope="module")
def uc_table():
    return dp_expect(10, 20, DPProblem.SAT_UC)


def test_root_generating_function(uc_table) -> None:
    assert eval_G(uc_table, 0.3, 0.4, 0.5, 0) == pytest.approx(0.5**20)
    assert log2_eval_G(uc_table, 1.0, 1.0, 0.5, 0) == pytest.approx(-20.0)


def test_g_at_ones_is_layer_mass(uc_table) -> None:
    for height in (1, 5, 9):
        assert eval_G(uc_table, 1.0, 1.0, 1.0, height) == pytest.approx(uc_table.layer(height).total(), rel=1e-12)


def test_log_eval_rejects_negative_arguments(uc_table) -> None:
    with pytest.raises(ValueError):
        log2_eval_G(uc_table, -1.0, 1.0, 1.0, 0)


@pytest.mark.parametrize(
    ("problem", "n", "param", "variant"),
    [
        (DPProblem.SAT_UC, 10, 20.0, RecursionVariant.EQ1),
        (DPProblem.SAT_GUC, 10, 20.0, RecursionVariant.EQ2),
        (DPProblem.COL_GUC, 8, 4.0, RecursionVariant.EQ3),
    ],
)
def test_recursions_hold(problem: DPProblem, n: int, param: float, variant: RecursionVariant) -> None:
    report = check_recursion(dp_expect(n, param, problem))
    assert report.variant is variant
    assert report.checked > 0
    assert report.max_residual < 1e-9


def test_recursion_flags_a_perturbed_table() -> None:
    table = dp_expect(8, 16, DPProblem.SAT_UC)
    table.layers[4].values = table.layers[4].values * 1.01
    assert not check_recursion(table).passed(1e-9)


def test_recursion_variant_must_match(uc_table) -> None:
    with pytest.raises(RecursionCheckError):
        check_recursion(uc_table, RecursionVariant.EQ3)


def test_recursion_needs_unpruned_layers() -> None:
    with pytest.raises(RecursionCheckError):
        check_recursion(dp_expect(8, 16, DPProblem.SAT_UC, prune=1e-12))
    with pytest.raises(RecursionCheckError):
        check_recursion(dp_expect(8, 16, DPProblem.SAT_UC, keep_layers=False))


def test_default_points() -> None:
    points = default_points()
    assert len(points) == 20
    assert points[0] == (1.0, 1.0, 1.0)
    assert all(0.1 <= v <= 1.0 for p in points for v in p)
    assert default_points() == points


def test_s0_partial_heights(uc_table) -> None:
    assert s0(uc_table, 0) == pytest.approx(uc_table.solution_leaves[0])
    assert s0(uc_table, 10) == pytest.approx(1024 * (7 / 8) ** 20, rel=1e-9)
    assert math.isfinite(s0(uc_table, 5))


def test_s0_is_sat_only() -> None:
    with pytest.raises(RecursionCheckError):
        s0(dp_expect(5, 2.0, DPProblem.COL_GUC), 5)
