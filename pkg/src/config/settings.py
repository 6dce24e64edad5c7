"""Settings loader for the DPLL tree-statistics toolkit."""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Any

import yaml

DEFAULT_SETTINGS_PATH = Path(__file__).resolve().parents[2] / "config" / "dpll.yaml"


@dataclass(frozen=True)
class SolverSettings:
    max_brute_force_sat_vars: int
    max_brute_force_col_vertices: int
    brute_force_chunk: int


@dataclass(frozen=True)
class ExpectationSettings:
    c1_cap: int
    default_prune: float
    max_states: int
    log_space_above_n: int
    exact_max_n: int


@dataclass(frozen=True)
class AsymptoticsSettings:
    grid_points: int
    golden_tol: float
    root_tol: float
    ode_delta: float
    ode_rtol: float
    ode_atol: float
    alpha_bracket: tuple[float, float]
    c_bracket: tuple[float, float]
    max_bracket_expansions: int


@dataclass(frozen=True)
class HarnessSettings:
    report_dir: str
    dp_max_n: int
    mc_tolerance_sigmas: float


@dataclass(frozen=True)
class Settings:
    version: str
    solver: SolverSettings
    expectation: ExpectationSettings
    asymptotics: AsymptoticsSettings
    harness: HarnessSettings


class SettingsLoadError(RuntimeError):
    """Raised when settings cannot be loaded."""


def _require(data: dict[str, Any], key: str) -> Any:
    if key not in data:
        raise SettingsLoadError(f"missing required settings key: {key}")
    return data[key]


def _section(raw: dict[str, Any], key: str) -> dict[str, Any]:
    value = _require(raw, key)
    if not isinstance(value, dict):
        raise SettingsLoadError(f"settings section must be a mapping: {key}")
    return value


def _positive_int(data: dict[str, Any], key: str) -> int:
    value = _require(data, key)
    if isinstance(value, bool) or not isinstance(value, int) or value < 1:
        raise SettingsLoadError(f"{key} must be a positive integer")
    return value


def _nonneg_float(data: dict[str, Any], key: str) -> float:
    value = _require(data, key)
    if isinstance(value, bool) or not isinstance(value, (int, float)) or value < 0:
        raise SettingsLoadError(f"{key} must be a nonnegative number")
    return float(value)


def _bracket(data: dict[str, Any], key: str) -> tuple[float, float]:
    value = _require(data, key)
    if not isinstance(value, list) or len(value) != 2:
        raise SettingsLoadError(f"{key} must be a two-element list")
    lo, hi = float(value[0]), float(value[1])
    if not lo < hi:
        raise SettingsLoadError(f"{key} must satisfy lo < hi")
    return lo, hi


def load_settings(path: Path = DEFAULT_SETTINGS_PATH) -> Settings:
    if not path.exists():
        raise SettingsLoadError(f"settings file not found: {path}")

    raw = yaml.safe_load(path.read_text(encoding="utf-8"))
    if not isinstance(raw, dict):
        raise SettingsLoadError("settings root must be an object")

    solver_raw = _section(raw, "solver")
    expectation_raw = _section(raw, "expectation")
    asym_raw = _section(raw, "asymptotics")
    harness_raw = _section(raw, "harness")

    prune = _nonneg_float(expectation_raw, "default_prune")
    if prune > 1e-12:
        raise SettingsLoadError("default_prune must lie in [0, 1e-12]")

    return Settings(
        version=str(_require(raw, "version")),
        solver=SolverSettings(
            max_brute_force_sat_vars=_positive_int(solver_raw, "max_brute_force_sat_vars"),
            max_brute_force_col_vertices=_positive_int(solver_raw, "max_brute_force_col_vertices"),
            brute_force_chunk=_positive_int(solver_raw, "brute_force_chunk"),
        ),
        expectation=ExpectationSettings(
            c1_cap=_positive_int(expectation_raw, "c1_cap"),
            default_prune=prune,
            max_states=_positive_int(expectation_raw, "max_states"),
            log_space_above_n=_positive_int(expectation_raw, "log_space_above_n"),
            exact_max_n=_positive_int(expectation_raw, "exact_max_n"),
        ),
        asymptotics=AsymptoticsSettings(
            grid_points=_positive_int(asym_raw, "grid_points"),
            golden_tol=_nonneg_float(asym_raw, "golden_tol"),
            root_tol=_nonneg_float(asym_raw, "root_tol"),
            ode_delta=_nonneg_float(asym_raw, "ode_delta"),
            ode_rtol=_nonneg_float(asym_raw, "ode_rtol"),
            ode_atol=_nonneg_float(asym_raw, "ode_atol"),
            alpha_bracket=_bracket(asym_raw, "alpha_bracket"),
            c_bracket=_bracket(asym_raw, "c_bracket"),
            max_bracket_expansions=_positive_int(asym_raw, "max_bracket_expansions"),
        ),
        harness=HarnessSettings(
            report_dir=str(_require(harness_raw, "report_dir")),
            dp_max_n=_positive_int(harness_raw, "dp_max_n"),
            mc_tolerance_sigmas=_nonneg_float(harness_raw, "mc_tolerance_sigmas"),
        ),
    )
