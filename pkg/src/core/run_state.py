"""Experiment cell lifecycle.

Cells start PENDING, move to RUNNING when their first run is scheduled and
end DONE or FAILED. The report writer only emits rows for terminal cells.
"""

from __future__ import annotations

from enum import Enum


class CellTransitionError(RuntimeError):
    """Raised when a cell status transition is invalid."""


class CellStatus(str, Enum):
    PENDING = "PENDING"
    RUNNING = "RUNNING"
    DONE = "DONE"
    FAILED = "FAILED"

    @property
    def is_terminal(self) -> bool:
        return self in TERMINAL_CELL_STATUSES

    @property
    def report_label(self) -> str:
        return "ok" if self is CellStatus.DONE else self.value.lower()


TERMINAL_CELL_STATUSES = {CellStatus.DONE, CellStatus.FAILED}

_ALLOWED_TRANSITIONS: dict[CellStatus, set[CellStatus]] = {
    CellStatus.PENDING: {CellStatus.RUNNING, CellStatus.FAILED},
    CellStatus.RUNNING: {CellStatus.DONE, CellStatus.FAILED},
    CellStatus.DONE: set(),
    CellStatus.FAILED: set(),
}


def allowed_next_statuses(current: CellStatus) -> set[CellStatus]:
    """Return the valid next states for the current cell status."""

    return set(_ALLOWED_TRANSITIONS[current])


def validate_cell_transition(current: CellStatus, new: CellStatus) -> None:
    """Validate a cell status transition or raise a descriptive error."""

    if new not in _ALLOWED_TRANSITIONS[current]:
        raise CellTransitionError(f"invalid cell status transition: {current.value} -> {new.value}")
