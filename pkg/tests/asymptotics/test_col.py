from __future__ import annotations

import math

import pytest

from src.asymptotics.col import c_u_col, col_first_moment, gamma_h, omega_col
from src.asymptotics.uc import omega_col_asym


def test_gamma_h_at_unit_arguments_matches_rate_form() -> None:
    c, t = 5.0, 0.3
    expected = c * t * t / 6 - c * t / 3 - (1 - t) * math.log(2) + math.log(3 - math.exp(-2 * c * t / 3))
    assert gamma_h(1.0, 1.0, t, c) == pytest.approx(expected, abs=1e-12)


def test_gamma_h_domain() -> None:
    with pytest.raises(ValueError):
        gamma_h(0.0, 1.0, 0.5, 2.0)
    with pytest.raises(ValueError):
        gamma_h(1.0, 0.0, 0.5, 2.0)


def test_small_degree_rate_sits_on_the_boundary() -> None:
    result = omega_col(1.0)
    assert result.value == pytest.approx(0.744243, abs=1e-5)
    assert result.boundary_flag
    assert result.units.value == "nats"


def test_rate_is_ln2_without_edges() -> None:
    assert omega_col(0.0).value == pytest.approx(math.log(2.0), abs=1e-12)


def test_threshold_constant() -> None:
    assert c_u_col() == pytest.approx(13.1538, abs=1e-3)


def test_large_degree_asymptote_in_bits() -> None:
    c = 1e3
    result = omega_col(c)
    assert not result.boundary_flag
    assert c * c * result.value / math.log(2.0) == pytest.approx(1.0397, rel=0.01)
    assert c * c * omega_col_asym(c) == pytest.approx(1.0397, rel=1e-3)


def test_first_moment() -> None:
    assert col_first_moment(0.0) == pytest.approx(math.log(3.0))
    assert col_first_moment(6.0) == pytest.approx(math.log(3.0) + 3.0 * math.log(2.0 / 3.0))
