from __future__ import annotations

import pytest

from src.core.run_state import (
    CellStatus,
    CellTransitionError,
    allowed_next_statuses,
    validate_cell_transition,
)


def test_valid_transitions() -> None:
    validate_cell_transition(CellStatus.PENDING, CellStatus.RUNNING)
    validate_cell_transition(CellStatus.RUNNING, CellStatus.DONE)
    validate_cell_transition(CellStatus.RUNNING, CellStatus.FAILED)


@pytest.mark.parametrize(
    ("current", "new"),
    [
        (CellStatus.PENDING, CellStatus.DONE),
        (CellStatus.DONE, CellStatus.RUNNING),
        (CellStatus.FAILED, CellStatus.RUNNING),
    ],
)
def test_invalid_transitions(current: CellStatus, new: CellStatus) -> None:
    with pytest.raises(CellTransitionError):
        validate_cell_transition(current, new)


def test_terminal_statuses_have_no_successor() -> None:
    for status in CellStatus:
        assert status.is_terminal == (not allowed_next_statuses(status))


def test_report_labels() -> None:
    assert CellStatus.DONE.report_label == "ok"
    assert CellStatus.FAILED.report_label == "failed"
