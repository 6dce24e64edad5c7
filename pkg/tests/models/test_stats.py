from __future__ import annotations

from src.models.stats import STATS_CSV_COLUMNS, TreeStats


def test_profiles_sized_to_heights() -> None:
    stats = TreeStats(num_vars=4)
    assert len(stats.solution_leaves) == 5
    assert len(stats.to_rows()) == 5
    assert len(STATS_CSV_COLUMNS) == len(stats.to_rows()[0])


def test_accounting_and_weighted_solutions() -> None:
    stats = TreeStats(num_vars=3)
    # one 2-way split at the root, one 3-way split below it
    stats.splits2[0] = 1
    stats.splits3[1] = 1
    stats.solution_leaves[2] = 1
    stats.solution_leaves[3] = 1
    stats.contradiction_leaves[1] = 1
    stats.contradiction_leaves[2] = 1
    assert stats.total_leaves == 4
    assert stats.accounting_holds()
    assert stats.weighted_solutions() == 2 + 1


def test_summary_keys() -> None:
    summary = TreeStats(num_vars=2, count=3).summary()
    assert summary["count"] == 3
    assert summary["halted"] is False
    assert summary["total_leaves"] == 0
