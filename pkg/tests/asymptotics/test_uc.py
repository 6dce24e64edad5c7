from __future__ import annotations

import math

import numpy as np
import pytest

from src.asymptotics.uc import (
    alpha_star,
    alpha_u,
    big_omega,
    gamma_uc,
    omega_c,
    omega_c_asym,
    omega_s,
)


def test_big_omega_reference_value() -> None:
    assert big_omega(0.5, 10.0, 3) == pytest.approx(-0.431094, abs=1e-6)


@pytest.mark.parametrize("t", np.linspace(0.0, 1.0, 11))
def test_big_omega_matches_gamma(t: float) -> None:
    expected = t + 3.0 * math.log2(gamma_uc(1.0, 1.0, float(t)))
    assert big_omega(float(t), 3.0, 3) == pytest.approx(expected, abs=1e-12)


def test_big_omega_at_one_is_solution_rate() -> None:
    assert big_omega(1.0, 4.0) == pytest.approx(omega_s(4.0), abs=1e-12)


def test_big_omega_domain() -> None:
    with pytest.raises(ValueError):
        big_omega(1.5, 1.0)
    with pytest.raises(ValueError):
        big_omega(0.5, 1.0, k=2)


def test_low_ratio_rate_sits_on_the_boundary() -> None:
    result = omega_c(1.0)
    assert result.value == pytest.approx(0.807355, abs=1e-6)
    assert result.boundary_flag
    assert result.argmax == pytest.approx(1.0)
    assert result.units.value == "bits"


def test_rates_coincide_below_and_split_above_threshold() -> None:
    for alpha in (1.0, 2.0, 4.0):
        assert omega_c(alpha).value == pytest.approx(omega_s(alpha), abs=1e-10)
    for alpha in (6.0, 10.0, 20.0):
        result = omega_c(alpha)
        assert result.value > omega_s(alpha) + 1e-6
        assert not result.boundary_flag


def test_threshold_constants() -> None:
    assert alpha_star(3) == pytest.approx(4.56429, abs=1e-3)
    assert alpha_u(3) == pytest.approx(10.1286, abs=1e-3)


def test_large_ratio_asymptote() -> None:
    alpha = 1e4
    assert alpha * omega_c(alpha).value == pytest.approx(0.46209, rel=0.01)
    assert alpha * omega_c_asym(alpha) == pytest.approx(0.46209, rel=1e-4)
