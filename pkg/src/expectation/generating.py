"""Generating-function evaluation and the height-recursion residual checks."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Optional, Sequence

import numpy as np

from src.expectation.kernels import DPProblem, StepCoefficients, step_coefficients
from src.expectation.table import ExpectationTable, StateLayer

LOGGER = logging.getLogger(__name__)

Point = tuple[float, float, float]
DEGENERATE_F = 1e-12


class RecursionCheckError(RuntimeError):
    """Raised when a table cannot be checked against the requested recursion."""


class RecursionVariant(str, Enum):
    EQ1 = "eq1"
    EQ2 = "eq2"
    EQ3 = "eq3"


VARIANT_FOR_PROBLEM = {
    DPProblem.SAT_UC: RecursionVariant.EQ1,
    DPProblem.SAT_GUC: RecursionVariant.EQ2,
    DPProblem.COL_GUC: RecursionVariant.EQ3,
}


def _log2_eval_layer(layer: StateLayer, x: Point) -> tuple[float, float]:
    """(sign, log2|G|) of one layer, summed with a running max for range safety."""

    o1, o2, o3 = layer.offset
    s1, s2, s3 = layer.values.shape
    terms = []
    for axis_x, first, size in zip(x, (o1, o2, o3), (s1, s2, s3)):
        powers = np.arange(first, first + size)
        terms.append(np.power(float(axis_x), powers))
    total = np.einsum("ijk,i,j,k->", layer.values, terms[0], terms[1], terms[2])
    if total == 0:
        return 0.0, float("-inf")
    return float(np.sign(total)), float(np.log2(abs(total))) + layer.log2_scale


def eval_G(table: ExpectationTable, x1: float, x2: float, x3: float, height: int) -> float:
    """G(x1, x2, x3; T) = sum over states of x1^C1 x2^C2 x3^C3 L(C, T)."""

    sign, log2_abs = _log2_eval_layer(table.layer(height), (x1, x2, x3))
    if sign == 0:
        return 0.0
    return sign * float(np.exp2(log2_abs))


def log2_eval_G(table: ExpectationTable, x1: float, x2: float, x3: float, height: int) -> float:
    """log2 G for nonnegative arguments; -inf when G vanishes."""

    if min(x1, x2, x3) < 0:
        raise ValueError("log-space evaluation needs nonnegative arguments")
    return _log2_eval_layer(table.layer(height), (x1, x2, x3))[1]


def _rhs(variant: RecursionVariant, g, x: Point, f: Point) -> float:
    x1, x2, _ = x
    f1, f2, f3 = f
    full = g(f1, f2, f3)
    no_unit = g(0.0, f2, f3)
    origin = g(0.0, 0.0, 0.0)
    if variant is RecursionVariant.EQ1:
        return full / f1 + (2.0 - 1.0 / f1) * no_unit - 2.0 * origin
    only3 = g(0.0, 0.0, f3)
    if variant is RecursionVariant.EQ2:
        return (
            full / f1
            + ((1.0 + x1) / f2 - 1.0 / f1) * no_unit
            + ((1.0 + x2) / f3 - (1.0 + x1) / f2) * only3
            - ((1.0 + x2) / f3) * origin
        )
    return (
        full / f1
        + (2.0 / f2 - 1.0 / f1) * no_unit
        + (3.0 / f3 - 2.0 / f2) * only3
        - (3.0 / f3) * origin
    )


@dataclass
class RecursionReport:
    variant: RecursionVariant
    checked: int = 0
    skipped: int = 0
    max_residual: float = 0.0
    worst: Optional[tuple[int, Point]] = None
    residuals: list[tuple[int, Point, float]] = field(default_factory=list)

    def passed(self, tolerance: float = 1e-9) -> bool:
        return self.checked > 0 and self.max_residual < tolerance


def default_points(count: int = 20, seed: int = 0) -> list[Point]:
    rng = np.random.default_rng(seed)
    grid = rng.uniform(0.1, 1.0, size=(count, 3))
    grid[0] = (1.0, 1.0, 1.0)
    return [(float(a), float(b), float(c)) for a, b, c in grid]


def _f_values(coeffs: StepCoefficients, x: Point) -> Point:
    f1, f2, f3 = coeffs.f(*x)
    return float(f1), float(f2), float(f3)


def check_recursion(
    table: ExpectationTable,
    variant: RecursionVariant | str | None = None,
    points: Optional[Sequence[Point]] = None,
    heights: Optional[Iterable[int]] = None,
) -> RecursionReport:
    """Residuals |LHS - RHS| / (1 + |LHS|) of G(x; T+1) against G(.; T).

    Points where some f_j is degenerate (|f_j| < 1e-12) are skipped and
    counted in the report.
    """

    variant = RecursionVariant(variant) if variant is not None else VARIANT_FOR_PROBLEM[table.problem]
    if VARIANT_FOR_PROBLEM[table.problem] is not variant:
        raise RecursionCheckError(f"{variant.value} does not describe a {table.problem.value} table")
    if table.prune != 0.0:
        raise RecursionCheckError("residual checks need a table built with prune=0")
    if len(table.layers) != table.n + 1:
        raise RecursionCheckError("table was built without all state layers")
    if float(table.discarded.sum()) > 0:
        raise RecursionCheckError("table dropped mass at the C1 cap")
    if points is None:
        points = default_points()
    if heights is None:
        heights = range(table.n)

    report = RecursionReport(variant=variant)
    for height in heights:
        if not 0 <= height < table.n:
            raise RecursionCheckError(f"height {height} has no successor layer")
        coeffs = step_coefficients(table.problem, table.n, height, table.param)

        def g(a: float, b: float, c: float, _h: int = height) -> float:
            return eval_G(table, a, b, c, _h)

        for x in points:
            f = _f_values(coeffs, x)
            if min(abs(v) for v in f) < DEGENERATE_F:
                report.skipped += 1
                continue
            lhs = eval_G(table, x[0], x[1], x[2], height + 1)
            rhs = _rhs(variant, g, x, f)
            residual = abs(lhs - rhs) / (1.0 + abs(lhs))
            report.checked += 1
            report.residuals.append((height, x, residual))
            if residual > report.max_residual or report.worst is None:
                report.max_residual = max(report.max_residual, residual)
                report.worst = (height, x)
    LOGGER.info(
        "recursion %s checked=%d skipped=%d max_residual=%.3g",
        variant.value,
        report.checked,
        report.skipped,
        report.max_residual,
    )
    return report


def s0(table: ExpectationTable, height: int) -> float:
    """Sum over H <= T of 2^(T-H) G(0,0,0; H)."""

    if not table.problem.is_sat:
        raise RecursionCheckError("S0 is defined for SAT tables")
    if not 0 <= height <= table.n:
        raise ValueError(f"height {height} outside [0, {table.n}]")
    heights = np.arange(height + 1)
    terms = table.log2_solution[: height + 1] + (height - heights)
    return float(np.exp2(np.logaddexp2.reduce(terms)))


def first_moment(n: int, m: int, k: int = 3) -> float:
    """Expected number of solutions 2^N (1 - 2^-k)^M under replacement sampling."""

    return float(np.exp2(n + m * np.log2(1.0 - 2.0**-k)))
