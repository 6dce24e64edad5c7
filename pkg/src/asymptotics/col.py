"""Tree-growth rate of DPLL-GUC on random-graph 3-coloring, in nats per vertex."""

from __future__ import annotations

import math

import numpy as np

from src.asymptotics.optimize import find_root, maximize_on_grid
from src.models.growth import OmegaResult, RateUnits

TWO_LN3 = 2.0 * math.log(3.0)


def gamma_h(x2: float, x3: float, t: float, c: float) -> float:
    """Log growth of the coloring generating function at height tN."""

    if x2 <= 0 or x3 <= 0:
        raise ValueError("x2 and x3 must be positive")
    inner = 3.0 + math.exp(-2.0 * c * t / 3.0) * (2.0 * x2 / x3 - 3.0)
    if inner <= 0:
        raise ValueError(f"log argument {inner} is not positive at x2={x2}, x3={x3}, t={t}, c={c}")
    return c * t * t / 6.0 - c * t / 3.0 + (1.0 - t) * math.log(x2 / 2.0) + math.log(inner)


def _omega_h(t: float | np.ndarray, c: float) -> float | np.ndarray:
    # gamma_h(1, 1, t, c) rearranged so that small t and large c keep full precision
    return c * t * t / 6.0 - c * t / 3.0 + t * math.log(2.0) + np.log1p(-np.expm1(-2.0 * c * t / 3.0) / 2.0)


def omega_col(c: float, grid_points: int = 10_000, tol: float = 1e-10) -> OmegaResult:
    if c < 0:
        raise ValueError("c must be nonnegative")
    best = maximize_on_grid(
        lambda t: float(_omega_h(t, c)),
        0.0,
        1.0,
        points=grid_points,
        tol=tol,
        f_grid=lambda ts: _omega_h(ts, c),
    )
    return OmegaResult(
        value=best.value,
        argmax=best.argmax,
        boundary_flag=best.boundary,
        variant="col-guc",
        units=RateUnits.NATS,
        diagnostics={"grid_points": grid_points, "golden_tol": tol, "local_maxima": best.local_maxima},
    )


def c_u_col(
    bracket: tuple[float, float] = (5.0, 30.0),
    tol: float = 1e-9,
    grid_points: int = 10_000,
    max_expansions: int = 8,
) -> float:
    """Root of omega_h(c) + c/6 = 2 ln 3."""

    return find_root(
        lambda c: omega_col(c, grid_points=grid_points).value + c / 6.0 - TWO_LN3,
        bracket[0],
        bracket[1],
        tol=tol,
        max_expansions=max_expansions,
    )


def col_first_moment(c: float) -> float:
    """ln of the expected number of proper 3-colorings per vertex."""

    return math.log(3.0) + (c / 2.0) * math.log(2.0 / 3.0)
