"""Random k-SAT formulas and G(N, p = c/N) graphs."""

from __future__ import annotations

import logging
from typing import Union

import numpy as np
from scipy.special import comb

from src.models.instance import CnfInstance, Graph, InstanceError

LOGGER = logging.getLogger(__name__)

SeedLike = Union[int, np.random.SeedSequence, np.random.Generator, None]


def as_generator(seed: SeedLike) -> np.random.Generator:
    if isinstance(seed, np.random.Generator):
        return seed
    return np.random.default_rng(seed)


def legal_clause_count(n: int, k: int) -> int:
    return int(comb(n, k, exact=True)) * (1 << k)


def _draw_variable_rows(rng: np.random.Generator, n: int, k: int, rows: int) -> np.ndarray:
    """Rows of k distinct variables in [1, n], sorted ascending."""

    out = rng.integers(1, n + 1, size=(rows, k))
    while True:
        ordered = np.sort(out, axis=1)
        bad = np.any(ordered[:, 1:] == ordered[:, :-1], axis=1)
        if not bad.any():
            return ordered
        out[bad] = rng.integers(1, n + 1, size=(int(bad.sum()), k))


def _draw_clauses(rng: np.random.Generator, n: int, k: int, rows: int) -> np.ndarray:
    variables = _draw_variable_rows(rng, n, k, rows)
    signs = np.where(rng.integers(0, 2, size=(rows, k)) == 1, 1, -1)
    return variables * signs


def gen_ksat(n: int, m: int, k: int = 3, seed: SeedLike = None, distinct: bool = False) -> CnfInstance:
    """Draw M clauses uniformly from the C(n, k) * 2^k legal k-clauses.

    Clauses are independent (with replacement) unless ``distinct`` is set.
    """

    if k < 2:
        raise InstanceError("k must be at least 2")
    if n < k:
        raise InstanceError(f"cannot form a {k}-clause over {n} variables")
    if m < 0:
        raise InstanceError("number of clauses must be nonnegative")
    rng = as_generator(seed)

    if not distinct:
        rows = _draw_clauses(rng, n, k, m)
        clauses = tuple(tuple(int(x) for x in row) for row in rows)
        return CnfInstance(num_vars=n, clauses=clauses, k=k)

    available = legal_clause_count(n, k)
    if m > available:
        raise InstanceError(f"{m} distinct clauses requested but only {available} exist")
    seen: set[tuple[int, ...]] = set()
    ordered: list[tuple[int, ...]] = []
    while len(ordered) < m:
        batch = _draw_clauses(rng, n, k, max(m - len(ordered), 16))
        for row in batch:
            clause = tuple(int(x) for x in row)
            if clause in seen:
                continue
            seen.add(clause)
            ordered.append(clause)
            if len(ordered) == m:
                break
    return CnfInstance(num_vars=n, clauses=tuple(ordered), k=k)


def clauses_for_ratio(n: int, alpha: float) -> int:
    """M = round(alpha * N)."""

    return int(round(alpha * n))


def gen_gnp(n: int, c: float, seed: SeedLike = None) -> Graph:
    """Erdos-Renyi graph with edge probability c / n."""

    if n < 1:
        raise InstanceError("graph needs at least one vertex")
    if c < 0 or c > n:
        raise InstanceError(f"average degree c={c} must lie in [0, {n}]")
    rng = as_generator(seed)
    p = c / n
    rows, cols = np.triu_indices(n, k=1)
    keep = rng.random(rows.size) < p
    edges = tuple((int(u) + 1, int(v) + 1) for u, v in zip(rows[keep], cols[keep]))
    return Graph(num_vertices=n, edges=edges)
