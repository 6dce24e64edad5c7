"""One-dimensional maximization and root bracketing for growth-rate curves."""

from __future__ import annotations

import logging
import math
from dataclasses import dataclass
from typing import Callable, Optional

import numpy as np
from scipy.optimize import bisect

LOGGER = logging.getLogger(__name__)

INV_PHI = (math.sqrt(5.0) - 1.0) / 2.0
INV_PHI_SQ = (3.0 - math.sqrt(5.0)) / 2.0

Objective = Callable[[float], float]
GridObjective = Callable[[np.ndarray], np.ndarray]


class OptimizeError(RuntimeError):
    """Raised when a maximization cannot be carried out."""


class BracketError(RuntimeError):
    """Raised when no sign change is found for a root."""

    def __init__(self, message: str, interval: tuple[float, float]) -> None:
        super().__init__(message)
        self.interval = interval


@dataclass(frozen=True)
class Maximum:
    argmax: float
    value: float
    boundary: bool
    local_maxima: int = 0


def golden_max(f: Objective, a: float, b: float, tol: float = 1e-10, max_iter: int = 500) -> Maximum:
    """Golden-section search for the maximum of a unimodal f on [a, b]."""

    if not a < b:
        raise OptimizeError(f"empty bracket [{a}, {b}]")
    h = b - a
    c = a + INV_PHI_SQ * h
    d = a + INV_PHI * h
    fc, fd = f(c), f(d)
    for _ in range(max_iter):
        if h <= tol:
            break
        if fc > fd:
            b, d, fd = d, c, fc
            h = INV_PHI * h
            c = a + INV_PHI_SQ * h
            fc = f(c)
        else:
            a, c, fc = c, d, fd
            h = INV_PHI * h
            d = a + INV_PHI * h
            fd = f(d)
    if fc > fd:
        return Maximum(argmax=c, value=fc, boundary=False)
    return Maximum(argmax=d, value=fd, boundary=False)


def maximize_on_grid(
    f: Objective,
    lo: float,
    hi: float,
    points: int = 10_000,
    tol: float = 1e-10,
    f_grid: Optional[GridObjective] = None,
) -> Maximum:
    """Global maximum over [lo, hi]: grid scan, then golden refinement.

    Every interior local maximum of the grid is refined. An endpoint winner
    is compared against a refinement of its neighbouring cell, and the
    result is flagged ``boundary`` when the endpoint value stands.
    """

    if points < 3:
        raise OptimizeError("grid needs at least three points")
    grid = np.linspace(lo, hi, points)
    if f_grid is not None:
        values = np.asarray(f_grid(grid), dtype=float)
    else:
        values = np.array([f(float(t)) for t in grid])
    if not np.all(np.isfinite(values)):
        raise OptimizeError("objective is not finite on the grid")
    step = grid[1] - grid[0]

    candidates = [Maximum(argmax=float(lo), value=float(values[0]), boundary=True)]
    candidates.append(Maximum(argmax=float(hi), value=float(values[-1]), boundary=True))
    interior = np.nonzero((values[1:-1] >= values[:-2]) & (values[1:-1] > values[2:]))[0] + 1
    for idx in interior:
        refined = golden_max(f, float(grid[idx] - step), float(grid[idx] + step), tol=tol)
        candidates.append(refined)
    for edge, neighbour in ((0, 1), (points - 1, points - 2)):
        if values[neighbour] >= values[edge]:
            continue
        left, right = sorted((float(grid[edge]), float(grid[neighbour])))
        candidates.append(golden_max(f, left, right, tol=tol))

    best = max(candidates, key=lambda m: m.value)
    at_edge = best.boundary or best.argmax - lo < 2 * tol or hi - best.argmax < 2 * tol
    return Maximum(argmax=float(best.argmax), value=float(best.value), boundary=bool(at_edge), local_maxima=len(interior))


def find_root(
    g: Objective,
    lo: float,
    hi: float,
    tol: float = 1e-9,
    max_expansions: int = 8,
) -> float:
    """Bisection root of g, widening [lo, hi] outward until the sign changes."""

    g_lo, g_hi = g(lo), g(hi)
    expansions = 0
    while np.sign(g_lo) == np.sign(g_hi) and g_lo != 0.0:
        if expansions >= max_expansions:
            raise BracketError(f"no sign change on [{lo}, {hi}]", (lo, hi))
        width = hi - lo
        lo, hi = max(lo - width / 2.0, 1e-9), hi + width / 2.0
        g_lo, g_hi = g(lo), g(hi)
        expansions += 1
        LOGGER.debug("root bracket widened to [%g, %g]", lo, hi)
    if g_lo == 0.0:
        return lo
    if g_hi == 0.0:
        return hi
    return float(bisect(g, lo, hi, xtol=tol, rtol=4 * np.finfo(float).eps, maxiter=500))
