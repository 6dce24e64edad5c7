"""Clause-vector transition kernels.

One height step replaces every clause (or vertex list) of length j
independently by stay * x_j + down * x_{j-1} + vanish, losing the remaining
probability to a contradiction. For SAT at R = N - T unassigned variables:

    f1 = (1 - mu) x1 + mu/2            (mu/2 lost)
    f2 = (1 - 2mu) x2 + mu x1 + mu
    f3 = (1 - 3mu) x3 + (3mu/2) x2 + 3mu/2,      mu = 1/R

and for 3-COL, with mu = c / (3N):

    f1 = (1 - mu) x1                   (mu lost)
    f2 = (1 - 2mu) x2 + 2mu x1
    f3 = (1 - 3mu) x3 + 3mu x2

Stay coefficients are clamped at zero. A state with C_j >= 1 and R < j
carries no mass, so the clamp never changes a reachable value.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import comb
from typing import Any, Union

import numpy as np

ClauseVector = tuple[int, int, int]
Number = Union[float, Fraction]


class KernelError(RuntimeError):
    """Raised when a kernel is requested outside its domain."""


class DPProblem(str, Enum):
    SAT_UC = "sat-uc"
    SAT_GUC = "sat-guc"
    COL_GUC = "col-guc"

    @property
    def is_sat(self) -> bool:
        return self is not DPProblem.COL_GUC


@dataclass(frozen=True)
class AxisCoefficients:
    stay: Any
    down: Any
    vanish: Any
    loss: Any

    @property
    def kept(self) -> Any:
        return self.stay + self.down

    def substitute(self, x_self: Any, x_below: Any) -> Any:
        return self.stay * x_self + self.down * x_below + self.vanish


@dataclass(frozen=True)
class StepCoefficients:
    axes: tuple[AxisCoefficients, AxisCoefficients, AxisCoefficients]

    def f(self, x1: Any, x2: Any, x3: Any) -> tuple[Any, Any, Any]:
        a1, a2, a3 = self.axes
        return a1.substitute(x1, 0), a2.substitute(x2, x1), a3.substitute(x3, x2)


def _num(value: int, exact: bool, denominator: int = 1) -> Number:
    if exact:
        return Fraction(value, denominator)
    return value / denominator


def sat_coefficients(n: int, height: int, exact: bool = False) -> StepCoefficients:
    r = n - height
    if r < 1:
        raise KernelError(f"no unassigned variable at height {height} of {n}")
    zero = _num(0, exact)
    return StepCoefficients(
        axes=(
            AxisCoefficients(
                stay=_num(r - 1, exact, r),
                down=zero,
                vanish=_num(1, exact, 2 * r),
                loss=_num(1, exact, 2 * r),
            ),
            AxisCoefficients(
                stay=_num(max(r - 2, 0), exact, r),
                down=_num(1, exact, r),
                vanish=_num(1, exact, r),
                loss=zero,
            ),
            AxisCoefficients(
                stay=_num(max(r - 3, 0), exact, r),
                down=_num(3, exact, 2 * r),
                vanish=_num(3, exact, 2 * r),
                loss=zero,
            ),
        )
    )


def col_mu(n: int, avg_degree: float, exact: bool = False) -> Number:
    if exact:
        return Fraction(str(avg_degree)) / (3 * n)
    return avg_degree / (3.0 * n)


def col_coefficients(n: int, avg_degree: float, exact: bool = False) -> StepCoefficients:
    if avg_degree < 0 or avg_degree > n:
        raise KernelError(f"average degree c={avg_degree} must lie in [0, {n}]")
    mu = col_mu(n, avg_degree, exact)
    one = _num(1, exact)
    zero = _num(0, exact)
    return StepCoefficients(
        axes=(
            AxisCoefficients(stay=one - mu, down=zero, vanish=zero, loss=mu),
            AxisCoefficients(stay=one - 2 * mu, down=2 * mu, vanish=zero, loss=zero),
            AxisCoefficients(stay=one - 3 * mu, down=3 * mu, vanish=zero, loss=zero),
        )
    )


def step_coefficients(problem: DPProblem, n: int, height: int, param: float, exact: bool = False) -> StepCoefficients:
    if problem.is_sat:
        return sat_coefficients(n, height, exact)
    return col_coefficients(n, param, exact)


@dataclass(frozen=True)
class KernelRow:
    """Expected children of one source state.

    ``values[c1, c2, c3]`` is the expected multiplicity of target (c1, c2, c3);
    the array holds floats, or Fractions in exact mode.
    """

    source: ClauseVector
    height: int
    values: np.ndarray
    contradiction: Number
    branches: int

    @property
    def mass(self) -> Number:
        return self.values.sum()

    @property
    def targets(self) -> dict[ClauseVector, Number]:
        return {
            (int(i), int(j), int(k)): self.values[i, j, k]
            for i, j, k in zip(*np.nonzero(self.values))
        }


def _zeros(shape: tuple[int, ...], exact: bool) -> np.ndarray:
    if exact:
        out = np.empty(shape, dtype=object)
        out.fill(Fraction(0))
        return out
    return np.zeros(shape)


def _axis_distribution(count: int, axis: AxisCoefficients, exact: bool) -> np.ndarray:
    """Multinomial split of ``count`` units: entry [stay, down] (vanish is the rest)."""

    out = _zeros((count + 1, count + 1), exact)
    for stay in range(count + 1):
        for down in range(count - stay + 1):
            gone = count - stay - down
            weight = comb(count, stay) * comb(count - stay, down)
            out[stay, down] = weight * axis.stay**stay * axis.down**down * axis.vanish**gone
    return out


def _substitution_row(
    counts: ClauseVector,
    coeffs: StepCoefficients,
    branches: list[tuple[int, ClauseVector]],
    exact: bool,
) -> tuple[np.ndarray, Number]:
    """Expand prod_j f_j^{counts_j}, once per (multiplicity, fixed shift) branch.

    Returns the target array and the contradiction mass of the row.
    """

    n1, n2, n3 = counts
    a1, a2, a3 = coeffs.axes
    d1 = _axis_distribution(n1, a1, exact)[:, 0]
    d2 = _axis_distribution(n2, a2, exact)
    d3 = _axis_distribution(n3, a3, exact)

    # partial[c1', s2]: 1-clauses kept plus 2-clauses shortened
    partial = _zeros((n1 + n2 + 1, n2 + 1), exact)
    for down in range(n2 + 1):
        partial[down : down + n1 + 1, :] += np.multiply.outer(d1, d2[:, down])
    base = _zeros((n1 + n2 + 1, n2 + n3 + 1, n3 + 1), exact)
    for down in range(n3 + 1):
        base[:, down : down + n2 + 1, :] += np.multiply.outer(partial, d3[:, down])

    shift1 = max(f[0] for _, f in branches)
    shift2 = max(f[1] for _, f in branches)
    shift3 = max(f[2] for _, f in branches)
    s1, s2, s3 = base.shape
    values = _zeros((s1 + shift1, s2 + shift2, s3 + shift3), exact)
    total_branches = 0
    for multiplicity, (f1, f2, f3) in branches:
        total_branches += multiplicity
        values[f1 : f1 + s1, f2 : f2 + s2, f3 : f3 + s3] += base * multiplicity

    survive = (a1.stay + a1.vanish) ** n1
    full = (a1.stay + a1.vanish + a1.loss) ** n1
    rest = (a2.kept + a2.vanish) ** n2 * (a3.kept + a3.vanish) ** n3
    return values, total_branches * (full - survive) * rest


def _check_height(height: int, n: int) -> None:
    if not 0 <= height < n:
        raise KernelError(f"height {height} must lie in [0, {n})")


def kernel_unit_prop(c: ClauseVector, height: int, n: int, exact: bool = False) -> KernelRow:
    """Unit propagation row: one child, other 1-clauses may be violated."""

    _check_height(height, n)
    c1, c2, c3 = c
    if c1 < 1:
        raise KernelError("unit propagation needs a 1-clause")
    values, contradiction = _substitution_row(
        (c1 - 1, c2, c3), sat_coefficients(n, height, exact), [(1, (0, 0, 0))], exact
    )
    return KernelRow(source=c, height=height, values=values, contradiction=contradiction, branches=1)


def kernel_split_uc(c: ClauseVector, height: int, n: int, exact: bool = False) -> KernelRow:
    """UC split: both polarities of a uniform variable, row mass 2."""

    _check_height(height, n)
    if c[0] != 0:
        raise KernelError("UC splits only when no 1-clause exists")
    if c == (0, 0, 0):
        raise KernelError("the empty state is a solution leaf, not a split")
    values, contradiction = _substitution_row(c, sat_coefficients(n, height, exact), [(2, (0, 0, 0))], exact)
    return KernelRow(source=c, height=height, values=values, contradiction=contradiction, branches=2)


def kernel_split_guc(c: ClauseVector, height: int, n: int, exact: bool = False) -> KernelRow:
    """GUC split on a shortest clause: True branch drops it, False branch shortens it."""

    _check_height(height, n)
    c1, c2, c3 = c
    if c1 != 0:
        raise KernelError("GUC splits only when no 1-clause exists")
    if c2 + c3 < 1:
        raise KernelError("the empty state is a solution leaf, not a split")
    coeffs = sat_coefficients(n, height, exact)
    if c2 >= 1:
        counts = (0, c2 - 1, c3)
        branches = [(1, (0, 0, 0)), (1, (1, 0, 0))]
    else:
        counts = (0, 0, c3 - 1)
        branches = [(1, (0, 0, 0)), (1, (0, 1, 0))]
    values, contradiction = _substitution_row(counts, coeffs, branches, exact)
    return KernelRow(source=c, height=height, values=values, contradiction=contradiction, branches=2)


def kernel_col(c: ClauseVector, height: int, n: int, avg_degree: float, exact: bool = False) -> KernelRow:
    """Color the minimum-list vertex: j children for a j-color vertex."""

    _check_height(height, n)
    c1, c2, c3 = c
    if c1 + c2 + c3 != n - height:
        raise KernelError(f"state {c} does not hold {n - height} uncolored vertices")
    if c1 >= 1:
        counts, j = (c1 - 1, c2, c3), 1
    elif c2 >= 1:
        counts, j = (0, c2 - 1, c3), 2
    else:
        counts, j = (0, 0, c3 - 1), 3
    values, contradiction = _substitution_row(
        counts, col_coefficients(n, avg_degree, exact), [(j, (0, 0, 0))], exact
    )
    return KernelRow(source=c, height=height, values=values, contradiction=contradiction, branches=j)


def kernel_for(problem: DPProblem, c: ClauseVector, height: int, n: int, param: float, exact: bool = False) -> KernelRow:
    if problem is DPProblem.COL_GUC:
        return kernel_col(c, height, n, param, exact)
    if c[0] >= 1:
        return kernel_unit_prop(c, height, n, exact)
    if problem is DPProblem.SAT_UC:
        return kernel_split_uc(c, height, n, exact)
    return kernel_split_guc(c, height, n, exact)


def unit_prop_mass(c1: int, height: int, n: int, exact: bool = False) -> Number:
    """Closed form (1 - mu/2)^(C1 - 1) of a unit-propagation row."""

    if exact:
        return (1 - Fraction(1, 2 * (n - height))) ** (c1 - 1)
    mu = 1.0 / (n - height)
    return float(np.power(1.0 - mu / 2.0, c1 - 1))
