from __future__ import annotations

import pytest

from src.config.settings import Settings
from src.core.checks import ORACLE_RUNS_PER_CELL, PAPER_CONSTANTS, _counting_oracle, _kernel_identities, run_checks


def test_quick_suite(settings: Settings) -> None:
    results = run_checks(quick=True, settings=settings)
    names = {r.name for r in results}
    assert {"counting_oracle", "kernel_identities", "s0_identity", "dense_sparse_agreement"} <= names
    assert {"recursion_eq1", "recursion_eq2", "recursion_eq3"} <= names
    assert "threshold_constants" not in names
    failed = [(r.name, r.detail) for r in results if not r.passed]
    assert failed == []


def test_reference_constants_are_ordered() -> None:
    assert PAPER_CONSTANTS["alpha_star"] < PAPER_CONSTANTS["alpha_u"] < PAPER_CONSTANTS["alpha_u_guc"]


def test_kernel_identities_hold_in_exact_arithmetic() -> None:
    result = _kernel_identities(quick=True)
    assert result.passed, result.detail
    assert "exact rows, 0 violations" in result.detail


def test_full_oracle_covers_at_least_200_sat_instances() -> None:
    assert 4 * 4 * ORACLE_RUNS_PER_CELL >= 200


@pytest.mark.slow
def test_full_counting_oracle(settings: Settings) -> None:
    result = _counting_oracle(quick=False, settings=settings)
    assert result.passed, result.detail
    assert result.detail.startswith(f"{4 * 4 * ORACLE_RUNS_PER_CELL} SAT instances")
