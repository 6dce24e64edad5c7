"""Exhaustive enumeration oracles."""

from __future__ import annotations

import numpy as np

from src.models.instance import CnfInstance, Graph

MAX_SAT_VARS = 25
MAX_COL_VERTICES = 15
DEFAULT_CHUNK = 1 << 16


class BruteForceGuardError(RuntimeError):
    """Raised when an instance is too large to enumerate."""


def brute_force_count(
    instance: CnfInstance,
    max_vars: int = MAX_SAT_VARS,
    chunk: int = DEFAULT_CHUNK,
) -> int:
    n = instance.num_vars
    if n > max_vars:
        raise BruteForceGuardError(f"{n} variables exceeds the enumeration guard of {max_vars}")
    if not instance.clauses:
        return 1 << n
    lits = np.array(instance.clauses, dtype=np.int64)
    cols = np.abs(lits) - 1
    want = lits > 0
    shifts = np.arange(n, dtype=np.int64)
    total = 0
    for start in range(0, 1 << n, chunk):
        idx = np.arange(start, min(start + chunk, 1 << n), dtype=np.int64)
        bits = ((idx[:, None] >> shifts) & 1).astype(bool)
        alive = np.ones(idx.size, dtype=bool)
        for j in range(lits.shape[0]):
            alive &= np.any(bits[:, cols[j]] == want[j], axis=1)
        total += int(alive.sum())
    return total


def brute_force_col_count(
    graph: Graph,
    max_vertices: int = MAX_COL_VERTICES,
    chunk: int = DEFAULT_CHUNK,
) -> int:
    n = graph.num_vertices
    if n > max_vertices:
        raise BruteForceGuardError(f"{n} vertices exceeds the enumeration guard of {max_vertices}")
    space = 3**n
    if not graph.edges:
        return space
    edges = np.array(graph.edges, dtype=np.int64) - 1
    powers = 3 ** np.arange(n, dtype=np.int64)
    total = 0
    for start in range(0, space, chunk):
        idx = np.arange(start, min(start + chunk, space), dtype=np.int64)
        digits = (idx[:, None] // powers) % 3
        proper = np.all(digits[:, edges[:, 0]] != digits[:, edges[:, 1]], axis=1)
        total += int(proper.sum())
    return total
