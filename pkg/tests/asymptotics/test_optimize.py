from __future__ import annotations

import math

import pytest

from src.asymptotics.optimize import BracketError, OptimizeError, find_root, golden_max, maximize_on_grid


def test_golden_max_on_parabola() -> None:
    best = golden_max(lambda t: -((t - 0.3) ** 2), 0.0, 1.0)
    assert best.argmax == pytest.approx(0.3, abs=1e-8)


def test_grid_finds_global_of_two_peaks() -> None:
    def f(t: float) -> float:
        return math.exp(-((t - 0.2) ** 2) / 0.001) + 1.5 * math.exp(-((t - 0.7) ** 2) / 0.001)

    best = maximize_on_grid(f, 0.0, 1.0, points=2000)
    assert best.argmax == pytest.approx(0.7, abs=1e-6)
    assert best.local_maxima == 2
    assert not best.boundary


def test_endpoint_maximum_is_flagged() -> None:
    best = maximize_on_grid(lambda t: t, 0.0, 1.0, points=100)
    assert best.boundary
    assert best.argmax == pytest.approx(1.0)


def test_peak_inside_first_cell_is_refined() -> None:
    # maximum at 1e-5, well inside the first grid cell
    best = maximize_on_grid(lambda t: t - 5e4 * t * t, 0.0, 1.0, points=100)
    assert best.argmax == pytest.approx(1e-5, rel=1e-4)
    assert not best.boundary


def test_grid_rejects_nonfinite_values() -> None:
    with pytest.raises(OptimizeError):
        maximize_on_grid(lambda t: math.log(t) if t > 0 else float("-inf"), 0.0, 1.0, points=10)


def test_find_root_widens_bracket() -> None:
    assert find_root(lambda x: x - 30.0, 5.0, 20.0) == pytest.approx(30.0, abs=1e-8)


def test_find_root_reports_the_last_bracket() -> None:
    with pytest.raises(BracketError) as excinfo:
        find_root(lambda x: 1.0 + x * x, 1.0, 2.0, max_expansions=2)
    lo, hi = excinfo.value.interval
    assert lo < 1.0 and hi > 2.0
