from __future__ import annotations

import pytest

from src.asymptotics.guc import (
    GucVariant,
    alpha_u_guc,
    m_guc,
    omega_guc,
    phi_guc,
    split_integral_quad,
    y3_solve,
)
from src.asymptotics.uc import omega_guc_asym


def test_m_reference_values() -> None:
    assert m_guc(0.0) == pytest.approx(1.0)
    assert m_guc(0.75) == pytest.approx(0.0, abs=1e-15)
    assert m_guc(1.0) == pytest.approx(-0.381966, abs=1e-6)
    assert phi_guc(1.0) == pytest.approx(0.618034, abs=1e-6)
    with pytest.raises(ValueError):
        m_guc(-1.0)


def test_trajectory_starts_at_one() -> None:
    solution = y3_solve()
    assert solution.y3(1.0) == pytest.approx(1.0, abs=1e-12)
    assert solution.integral(1.0) == pytest.approx(0.0, abs=1e-12)
    assert solution.domain[0] == pytest.approx(0.75 + 1e-6)
    assert solution.accuracy < 1e-8
    assert 0.9 < solution.y3(0.8) < 0.95


@pytest.mark.parametrize("y2", [0.8, 0.9, 0.97])
def test_split_integral_matches_quadrature(y2: float) -> None:
    value, error = split_integral_quad(y2)
    assert error < 1e-9
    assert y3_solve().integral(y2) == pytest.approx(value, abs=1e-7)


def test_nested_quadrature_agrees() -> None:
    closed, _ = split_integral_quad(0.9)
    nested, _ = split_integral_quad(0.9, nested=True)
    assert nested == pytest.approx(closed, abs=1e-8)


def test_rate_above_threshold_is_interior() -> None:
    result = omega_guc(12.0)
    assert 0.75 < result.argmax < 1.0
    assert not result.boundary_flag
    assert result.diagnostics["ode_accuracy"] < 1e-8


def test_threshold_constant() -> None:
    assert alpha_u_guc() == pytest.approx(10.2183, abs=1e-3)


def test_printed_variant_root() -> None:
    assert alpha_u_guc(GucVariant.PRINTED) == pytest.approx(10.38, abs=0.01)


def test_large_ratio_asymptote() -> None:
    alpha = 1e3
    assert alpha * omega_guc(alpha).value == pytest.approx(0.29154, rel=0.02)
    assert alpha * omega_guc_asym(alpha) == pytest.approx(0.29154, rel=1e-4)


def test_nonpositive_ratio_rejected() -> None:
    with pytest.raises(ValueError):
        omega_guc(0.0)
