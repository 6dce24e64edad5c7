"""Tree-growth rate of DPLL with generalized unit clause (GUC) splitting on 3-SAT.

The objective is maximized over y2 in (3/4, 1]. Along that range the
clause-density trajectory obeys

    dy3/dy2 = 3 (1 + y2 - 2 y3) / (2 m(y2)),   y3(1) = 1,

and the log-count of split nodes I(y2) obeys dI/dy2 = -(I + log2 phi)/m
with I(1) = 0, where phi(z) = (sqrt(1 + 4z) - 1)/2. Both run backward from
y2 = 1 in one adaptive solve; m vanishes at 3/4, so the domain stops at
3/4 + delta.
"""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from typing import Any

import numpy as np
from scipy.integrate import quad, solve_ivp

from src.asymptotics.optimize import find_root, maximize_on_grid
from src.models.growth import OmegaResult, RateUnits

LOGGER = logging.getLogger(__name__)

LOWER_END = 0.75
DEFAULT_DELTA = 1e-6
DEFAULT_RTOL = 1e-12
DEFAULT_ATOL = 1e-14
LOG2_SEVEN_EIGHTHS = math.log2(7.0 / 8.0)


class OdeError(RuntimeError):
    """Raised when the backward solve stops short of the requested domain."""

    def __init__(self, message: str, domain: tuple[float, float]) -> None:
        super().__init__(message)
        self.domain = domain


class GucVariant(str, Enum):
    DERIVED = "derived"
    PRINTED = "printed"


def m_guc(x2: float | np.ndarray) -> float | np.ndarray:
    """m(x) = (1 + sqrt(1 + 4x))/2 - 2x."""

    if np.any(np.asarray(x2) < -0.25):
        raise ValueError("m is defined for x >= -1/4")
    return 0.5 * (1.0 + np.sqrt(1.0 + 4.0 * x2)) - 2.0 * x2


def phi_guc(z: float | np.ndarray) -> float | np.ndarray:
    return (np.sqrt(1.0 + 4.0 * z) - 1.0) / 2.0


def _rhs(y2: float, state: np.ndarray) -> np.ndarray:
    y3, split_log, weight_log, printed = state
    m = m_guc(y2)
    return np.array(
        [
            3.0 * (1.0 + y2 - 2.0 * y3) / (2.0 * m),
            -(split_log + math.log2(phi_guc(y2))) / m,
            1.0 / m,
            -math.log2(2.0 * y2 + m) / m * math.exp(weight_log),
        ]
    )


@dataclass(frozen=True)
class OdeSolution:
    """Backward solution on [3/4 + delta, 1] with dense interpolation.

    Rows of ``states`` are y3, I (derived split integral), the log weight
    and the printed-form integral, sampled at the solver's steps ``y2``.
    """

    y2: np.ndarray
    states: np.ndarray
    interpolant: Any
    accuracy: float
    domain: tuple[float, float]
    rtol: float
    atol: float

    def evaluate(self, y2: float | np.ndarray) -> np.ndarray:
        return self.interpolant(y2)

    def y3(self, y2: float | np.ndarray) -> float | np.ndarray:
        return self.interpolant(y2)[0]

    def integral(self, y2: float | np.ndarray) -> float | np.ndarray:
        return self.interpolant(y2)[1]

    def printed_integral(self, y2: float | np.ndarray) -> float | np.ndarray:
        return self.interpolant(y2)[3]


def _integrate(delta: float, rtol: float, atol: float) -> Any:
    lower = LOWER_END + delta
    sol = solve_ivp(
        _rhs,
        (1.0, lower),
        np.array([1.0, 0.0, 0.0, 0.0]),
        method="DOP853",
        rtol=rtol,
        atol=atol,
        dense_output=True,
    )
    if sol.status != 0 or sol.t[-1] > lower:
        reached = float(sol.t[-1])
        raise OdeError(f"integration stopped at y2={reached}: {sol.message}", (reached, 1.0))
    return sol


@lru_cache(maxsize=8)
def y3_solve(
    delta: float = DEFAULT_DELTA,
    rtol: float = DEFAULT_RTOL,
    atol: float = DEFAULT_ATOL,
    check_points: int = 200,
) -> OdeSolution:
    """Solve the y3 trajectory and the split integrals backward from y2 = 1.

    ``accuracy`` is the largest change of y3 or I on a check grid when the
    tolerances are halved.
    """

    if not 0 < delta < 0.25:
        raise ValueError("delta must lie in (0, 1/4)")
    sol = _integrate(delta, rtol, atol)
    finer = _integrate(delta, rtol / 2.0, atol / 2.0)
    grid = np.linspace(LOWER_END + delta, 1.0, check_points)
    accuracy = float(np.max(np.abs(sol.sol(grid)[:2] - finer.sol(grid)[:2])))
    LOGGER.info("guc ode steps=%d accuracy=%.3g delta=%g", sol.t.size, accuracy, delta)
    return OdeSolution(
        y2=sol.t,
        states=sol.y,
        interpolant=sol.sol,
        accuracy=accuracy,
        domain=(LOWER_END + delta, 1.0),
        rtol=rtol,
        atol=atol,
    )


def _log_weight_primitive(w: float) -> float:
    """Antiderivative of 1/m(w)."""

    s = math.sqrt(1.0 + 4.0 * w)
    return -math.log(1.0 + s) / 3.0 - 2.0 * math.log(abs(2.0 - s)) / 3.0


def split_integral_quad(y2: float, nested: bool = False) -> tuple[float, float]:
    """I(y2) by adaptive quadrature, with its error estimate.

    The inner exponent int_{y2}^{z} dw/m(w) is taken in closed form, or by
    a second quadrature when ``nested`` is set.
    """

    if not LOWER_END < y2 <= 1.0:
        raise ValueError("y2 must lie in (3/4, 1]")
    base = _log_weight_primitive(y2)

    def inner(z: float) -> float:
        if nested:
            return quad(lambda w: 1.0 / m_guc(w), y2, z, epsabs=1e-14, epsrel=1e-13)[0]
        return _log_weight_primitive(z) - base

    def integrand(z: float) -> float:
        return math.log2(phi_guc(z)) / m_guc(z) * math.exp(inner(z))

    value, error = quad(integrand, y2, 1.0, epsabs=1e-13, epsrel=1e-12, limit=200)
    return float(value), float(error)


def omega_guc(
    alpha: float,
    variant: GucVariant | str = GucVariant.DERIVED,
    delta: float = DEFAULT_DELTA,
    rtol: float = DEFAULT_RTOL,
    atol: float = DEFAULT_ATOL,
    grid_points: int = 10_000,
    tol: float = 1e-10,
) -> OmegaResult:
    """Growth rate of the GUC tree in bits per variable."""

    if alpha <= 0:
        raise ValueError("alpha must be positive")
    variant = GucVariant(variant)
    solution = y3_solve(delta, rtol, atol)
    row = 1 if variant is GucVariant.DERIVED else 3

    def objective(y2: float) -> float:
        state = solution.evaluate(y2)
        return float(state[row] + alpha * math.log2(state[0]))

    def objective_grid(y2: np.ndarray) -> np.ndarray:
        state = solution.evaluate(y2)
        return state[row] + alpha * np.log2(state[0])

    lo, hi = solution.domain
    best = maximize_on_grid(objective, lo, hi, points=grid_points, tol=tol, f_grid=objective_grid)
    return OmegaResult(
        value=best.value,
        argmax=best.argmax,
        boundary_flag=best.boundary,
        variant=f"guc-{variant.value}",
        units=RateUnits.BITS,
        diagnostics={
            "grid_points": grid_points,
            "golden_tol": tol,
            "ode_accuracy": solution.accuracy,
            "ode_steps": int(solution.y2.size),
            "local_maxima": best.local_maxima,
        },
    )


def alpha_u_guc(
    variant: GucVariant | str = GucVariant.DERIVED,
    bracket: tuple[float, float] = (5.0, 20.0),
    tol: float = 1e-9,
    grid_points: int = 10_000,
    max_expansions: int = 8,
) -> float:
    """Root of omega_g(alpha) + alpha log2(8/7) = 2."""

    def excess(alpha: float) -> float:
        return omega_guc(alpha, variant, grid_points=grid_points).value - LOG2_SEVEN_EIGHTHS * alpha - 2.0

    root = find_root(excess, bracket[0], bracket[1], tol=tol, max_expansions=max_expansions)
    LOGGER.info("alpha_u_guc variant=%s root=%.6f", GucVariant(variant).value, root)
    return root
