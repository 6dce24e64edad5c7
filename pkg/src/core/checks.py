"""Invariant suite behind the ``check`` command."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Optional

import numpy as np

from src.asymptotics.col import c_u_col
from src.asymptotics.guc import alpha_u_guc
from src.asymptotics.uc import alpha_star, alpha_u, big_omega, gamma_uc, omega_c, omega_s
from src.config.settings import Settings, load_settings
from src.expectation.dense import dp_expect, reachable_states
from src.expectation.generating import check_recursion, first_moment, s0
from src.expectation.kernels import DPProblem, kernel_for, unit_prop_mass
from src.expectation.sparse import dp_expect_sparse
from src.instances.generator import clauses_for_ratio, gen_gnp, gen_ksat
from src.models.experiment import Heuristic
from src.solver.brute_force import brute_force_col_count, brute_force_count
from src.solver.col_engine import dpll_col
from src.solver.sat_engine import dpll_count_sat

LOGGER = logging.getLogger(__name__)

PAPER_CONSTANTS = {
    "alpha_star": 4.56429,
    "alpha_u": 10.1286,
    "alpha_u_guc": 10.2183,
    "c_u_col": 13.1538,
}

ORACLE_RUNS_PER_CELL = 13


@dataclass(frozen=True)
class CheckResult:
    name: str
    passed: bool
    detail: str


def _counting_oracle(quick: bool, settings: Settings) -> CheckResult:
    rng = np.random.default_rng(20240601)
    sat_sizes = (6, 8, 10) if quick else (6, 8, 10, 12)
    per_setting = 2 if quick else ORACLE_RUNS_PER_CELL
    mismatches = 0
    checked = 0
    sat_instances = 0
    for n in sat_sizes:
        for alpha in (1.0, 2.0, 4.0, 8.0):
            for _ in range(per_setting):
                instance = gen_ksat(n, clauses_for_ratio(n, alpha), 3, seed=rng)
                sat_instances += 1
                truth = brute_force_count(instance, settings.solver.max_brute_force_sat_vars, settings.solver.brute_force_chunk)
                for heuristic in (Heuristic.UC, Heuristic.GUC):
                    count, _ = dpll_count_sat(instance, heuristic, seed=rng)
                    checked += 1
                    mismatches += int(count != truth)
    col_sizes = (6, 8) if quick else (6, 8, 10)
    for n in col_sizes:
        for c in (2.0, 5.0, 8.0):
            if c > n:
                continue
            for _ in range(per_setting):
                graph = gen_gnp(n, c, seed=rng)
                truth = brute_force_col_count(graph, settings.solver.max_brute_force_col_vertices, settings.solver.brute_force_chunk)
                count, _ = dpll_col(graph, seed=rng)
                checked += 1
                mismatches += int(count != truth)
    return CheckResult(
        "counting_oracle",
        mismatches == 0,
        f"{sat_instances} SAT instances, {checked} solves, {mismatches} mismatches",
    )


def _kernel_identities(quick: bool) -> CheckResult:
    n, m = (8, 16) if quick else (10, 20)
    violations = 0
    rows = 0
    for problem in (DPProblem.SAT_UC, DPProblem.SAT_GUC):
        table = dp_expect(n, m, problem)
        for c, height in reachable_states(table):
            if c == (0, 0, 0):
                continue
            row = kernel_for(problem, c, height, n, m, exact=True)
            if c[0] >= 1:
                ok = row.mass == unit_prop_mass(c[0], height, n, exact=True) and row.mass + row.contradiction <= 1
            else:
                ok = row.mass == 2 and row.contradiction == 0
            violations += int(not ok)
            rows += 1
    return CheckResult("kernel_identities", violations == 0, f"{rows} exact rows, {violations} violations")


def _recursions(quick: bool) -> list[CheckResult]:
    n = 8 if quick else 10
    cases = (
        (DPProblem.SAT_UC, n, 2.0 * n),
        (DPProblem.SAT_GUC, n, 2.0 * n),
        (DPProblem.COL_GUC, n, 4.0),
    )
    out = []
    for problem, n, param in cases:
        table = dp_expect(n, param, problem)
        report = check_recursion(table)
        out.append(
            CheckResult(
                f"recursion_{report.variant.value}",
                report.passed(1e-9),
                f"{report.checked} points, {report.skipped} skipped, max residual {report.max_residual:.3g}",
            )
        )
    return out


def _s0_identity(quick: bool) -> CheckResult:
    sizes = (10,) if quick else (8, 10, 15)
    worst = 0.0
    for n in sizes:
        m = 2 * n
        table = dp_expect(n, m, DPProblem.SAT_UC)
        expected = first_moment(n, m)
        worst = max(worst, abs(s0(table, n) - expected) / expected)
    return CheckResult("s0_identity", worst < 1e-9, f"max relative error {worst:.3g}")


def _engines_agree() -> CheckResult:
    worst = 0.0
    for problem, n, param in ((DPProblem.SAT_UC, 6, 12.0), (DPProblem.SAT_GUC, 6, 12.0), (DPProblem.COL_GUC, 6, 3.0)):
        dense = dp_expect(n, param, problem)
        sparse = dp_expect_sparse(n, param, problem).to_table()
        for height in range(n + 1):
            for c, value in sparse.layer(height).states():
                worst = max(worst, abs(dense.value(c, height) - value) / value)
    return CheckResult("dense_sparse_agreement", worst < 1e-12, f"max relative difference {worst:.3g}")


def _exact_s0(settings: Settings) -> CheckResult:
    n, m = 5, 8
    result = dp_expect_sparse(n, m, DPProblem.SAT_UC, exact=True, exact_max_n=settings.expectation.exact_max_n)
    weighted = sum(Fraction(2) ** (n - h) * result.solution[h] for h in range(n + 1))
    expected = Fraction(2) ** n * Fraction(7, 8) ** m
    return CheckResult("exact_s0_identity", weighted == expected, f"S0={weighted} expected={expected}")


def _growth_rates() -> CheckResult:
    ts = np.linspace(0.0, 1.0, 101)
    identity = max(abs(big_omega(float(t), 3.0, 3) - (t + 3.0 * math.log2(gamma_uc(1.0, 1.0, float(t))))) for t in ts)
    below = max(abs(omega_c(a).value - omega_s(a)) for a in (1.0, 2.0, 4.0))
    above = min(omega_c(a).value - omega_s(a) for a in (6.0, 10.0, 20.0))
    passed = identity < 1e-12 and below < 1e-10 and above > 1e-6
    return CheckResult(
        "growth_rates",
        passed,
        f"identity {identity:.3g}, below-threshold gap {below:.3g}, above-threshold margin {above:.3g}",
    )


def _constants(settings: Settings) -> CheckResult:
    asym = settings.asymptotics
    values = {
        "alpha_star": alpha_star(3, grid_points=asym.grid_points),
        "alpha_u": alpha_u(3, asym.alpha_bracket, asym.root_tol, asym.grid_points, asym.max_bracket_expansions),
        "alpha_u_guc": alpha_u_guc(bracket=asym.alpha_bracket, tol=asym.root_tol),
        "c_u_col": c_u_col(asym.c_bracket, asym.root_tol, asym.grid_points, asym.max_bracket_expansions),
    }
    errors = {name: abs(values[name] - PAPER_CONSTANTS[name]) for name in values}
    detail = ", ".join(f"{name}={values[name]:.5f}" for name in values)
    return CheckResult("threshold_constants", all(e < 1e-3 for e in errors.values()), detail)


def _guarded(name: str, fn: Callable[[], CheckResult]) -> CheckResult:
    try:
        return fn()
    except Exception as exc:  # noqa: BLE001
        LOGGER.error("check %s raised: %s", name, exc)
        return CheckResult(name, False, f"raised {type(exc).__name__}: {exc}")


def run_checks(quick: bool = False, settings: Optional[Settings] = None) -> list[CheckResult]:
    settings = settings or load_settings()
    results = [
        _guarded("counting_oracle", lambda: _counting_oracle(quick, settings)),
        _guarded("kernel_identities", lambda: _kernel_identities(quick)),
    ]
    try:
        results.extend(_recursions(quick))
    except Exception as exc:  # noqa: BLE001
        results.append(CheckResult("recursions", False, f"raised {type(exc).__name__}: {exc}"))
    results.append(_guarded("s0_identity", lambda: _s0_identity(quick)))
    results.append(_guarded("dense_sparse_agreement", _engines_agree))
    results.append(_guarded("growth_rates", _growth_rates))
    if not quick:
        results.append(_guarded("exact_s0_identity", lambda: _exact_s0(settings)))
        results.append(_guarded("threshold_constants", lambda: _constants(settings)))
    for result in results:
        LOGGER.info("check %s passed=%s %s", result.name, result.passed, result.detail)
    return results
