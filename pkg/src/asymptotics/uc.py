"""Tree-growth rates of DPLL with unit clause (UC) splitting on random k-SAT."""

from __future__ import annotations

import math

import numpy as np

from src.asymptotics.optimize import Maximum, find_root, maximize_on_grid
from src.models.growth import OmegaResult, RateUnits

DEFAULT_GRID_POINTS = 10_000
DEFAULT_GOLDEN_TOL = 1e-10
DEFAULT_ROOT_TOL = 1e-9
DEFAULT_ALPHA_BRACKET = (5.0, 20.0)


def _log_argument(t: float | np.ndarray, k: int) -> float | np.ndarray:
    scale = 2.0**-k
    return 1.0 - k * scale * np.power(t, k - 1) + (k - 1) * scale * np.power(t, k)


def big_omega(t: float, alpha: float, k: int = 3) -> float:
    """Omega(t, alpha, k) = t + alpha log2(1 - k t^(k-1)/2^k + (k-1) t^k/2^k)."""

    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t={t} outside [0, 1]")
    if k < 3:
        raise ValueError("k must be at least 3")
    scale = 2.0**-k
    inner = -k * scale * t ** (k - 1) + (k - 1) * scale * t**k
    assert inner > -1.0
    return t + alpha * math.log1p(inner) / math.log(2.0)


def gamma_uc(x2: float, x3: float, t: float) -> float:
    """Per-clause factor of the solution-leaf generating function at height tN."""

    if not 0.0 <= t <= 1.0:
        raise ValueError(f"t={t} outside [0, 1]")
    u = 1.0 - t
    return u**3 * x3 + 1.5 * t * u**2 * x2 + (t / 8.0) * (12.0 - 3.0 * t - 2.0 * t * t)


def omega_s(alpha: float, k: int = 3) -> float:
    """log2 of the expected solution count per variable: Omega at t = 1."""

    return 1.0 + alpha * math.log2(1.0 - 2.0**-k)


def first_moment_exponent(alpha: float, k: int = 3) -> float:
    return omega_s(alpha, k)


def omega_c(
    alpha: float,
    k: int = 3,
    grid_points: int = DEFAULT_GRID_POINTS,
    tol: float = DEFAULT_GOLDEN_TOL,
) -> OmegaResult:
    """Growth rate of the contradiction leaves: max of Omega over t in [0, 1]."""

    if alpha < 0:
        raise ValueError("alpha must be nonnegative")
    best: Maximum = maximize_on_grid(
        lambda t: big_omega(t, alpha, k),
        0.0,
        1.0,
        points=grid_points,
        tol=tol,
        f_grid=lambda ts: ts + alpha * np.log2(_log_argument(ts, k)),
    )
    return OmegaResult(
        value=best.value,
        argmax=best.argmax,
        boundary_flag=best.boundary,
        variant=f"uc-k{k}",
        units=RateUnits.BITS,
        diagnostics={"grid_points": grid_points, "golden_tol": tol, "local_maxima": best.local_maxima},
    )


def alpha_star(k: int = 3, grid_points: int = DEFAULT_GRID_POINTS, tol: float = DEFAULT_GOLDEN_TOL) -> float:
    """Smallest ratio at which some t < 1 beats the t = 1 value of Omega."""

    edge = 1.0 - 2.0**-k

    def threshold(t: float) -> float:
        return (1.0 - t) / math.log2(_log_argument(t, k) / edge)

    best = maximize_on_grid(lambda t: -threshold(t), 0.0, 0.999, points=grid_points, tol=tol)
    return -best.value


def alpha_u(
    k: int = 3,
    bracket: tuple[float, float] = DEFAULT_ALPHA_BRACKET,
    tol: float = DEFAULT_ROOT_TOL,
    grid_points: int = DEFAULT_GRID_POINTS,
    max_expansions: int = 8,
) -> float:
    """Root of omega_C(alpha, k) = 2 + alpha log2(1 - 2^-k)."""

    def excess(alpha: float) -> float:
        return omega_c(alpha, k, grid_points=grid_points).value - 2.0 - alpha * math.log2(1.0 - 2.0**-k)

    return find_root(excess, bracket[0], bracket[1], tol=tol, max_expansions=max_expansions)


def omega_c_asym(alpha: float, k: int = 3) -> float:
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    base = 2.0**k * math.log(2.0) / (k * (k - 1) * alpha)
    return (k - 2) / (k - 1) * base ** (1.0 / (k - 2))


def omega_guc_asym(alpha: float) -> float:
    if alpha <= 0:
        raise ValueError("alpha must be positive")
    golden = (1.0 + math.sqrt(5.0)) / 2.0
    return (3.0 + math.sqrt(5.0)) / (6.0 * math.log(2.0)) * math.log(golden) ** 2 / alpha


def omega_col_asym(c: float, k: int = 3) -> float:
    """Large-c reference for the coloring rate, in bits per vertex."""

    if c <= 0:
        raise ValueError("c must be positive")
    lead = k * (k - 2) / (k - 1) * (2.0 * math.log(2.0) / (k - 1)) ** (1.0 / (k - 2))
    return lead * c ** (-(k - 1) / (k - 2))
