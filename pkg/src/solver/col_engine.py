"""Instrumented 3-coloring search: minimum-list vertex, j-way splits."""

from __future__ import annotations

from collections import Counter
from typing import Union

import numpy as np

from src.instances.generator import SeedLike, as_generator
from src.models.experiment import SolveMode
from src.models.instance import Graph
from src.models.stats import BranchDecision, BranchKind, TreeStats
from src.solver.buckets import IndexedSet, SearchFrame
from src.solver.sat_engine import SolverError

NUM_COLORS = 3
FULL_MASK = (1 << NUM_COLORS) - 1
_POPCOUNT = [bin(mask).count("1") for mask in range(FULL_MASK + 1)]

_ASSIGN = 0
_STRIP = 1


class ColEngine:
    def __init__(self, graph: Graph, rng: np.random.Generator) -> None:
        n = graph.num_vertices
        self._n = n
        self._rng = rng
        self._adj = graph.adjacency()
        self._mask = [FULL_MASK] * (n + 1)
        self._color = [-1] * (n + 1)
        self._buckets = [IndexedSet(n + 1) for _ in range(NUM_COLORS + 1)]
        for v in range(1, n + 1):
            self._buckets[NUM_COLORS].add(v)
        self._trail: list[tuple[int, int, int]] = []

    def _assign(self, vertex: int, color: int) -> None:
        self._buckets[_POPCOUNT[self._mask[vertex]]].remove(vertex)
        self._color[vertex] = color
        self._trail.append((_ASSIGN, vertex, 0))
        bit = 1 << color
        for u in self._adj[vertex]:
            mask = self._mask[u]
            if self._color[u] == -1 and mask & bit:
                size = _POPCOUNT[mask]
                self._buckets[size].remove(u)
                self._mask[u] = mask ^ bit
                self._buckets[size - 1].add(u)
                self._trail.append((_STRIP, u, bit))

    def _undo(self, mark: int) -> None:
        trail = self._trail
        while len(trail) > mark:
            op, v, bit = trail.pop()
            if op == _STRIP:
                size = _POPCOUNT[self._mask[v]]
                self._buckets[size].remove(v)
                self._mask[v] |= bit
                self._buckets[size + 1].add(v)
            else:
                self._color[v] = -1
                self._buckets[_POPCOUNT[self._mask[v]]].add(v)

    def clause_vector(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self._buckets[1:])

    def decide(self) -> BranchDecision:
        for size in range(1, NUM_COLORS + 1):
            if len(self._buckets[size]):
                vertex = self._buckets[size].pick(self._rng)
                mask = self._mask[vertex]
                colors = [c for c in range(NUM_COLORS) if mask >> c & 1]
                order = self._rng.permutation(len(colors))
                kind = BranchKind.UNIT if size == 1 else BranchKind.SPLIT
                return BranchDecision(kind, tuple((vertex, colors[i]) for i in order))
        raise SolverError("no uncolored vertex left to branch on")

    def _record_split(self, stats: TreeStats, height: int, decision: BranchDecision) -> None:
        if decision.arity == 2:
            stats.splits2[height] += 1
        elif decision.arity == 3:
            stats.splits3[height] += 1

    def run(self, mode: Union[SolveMode, str] = SolveMode.COUNT, trace_states: bool = False) -> TreeStats:
        mode = SolveMode(mode)
        n = self._n
        stats = TreeStats(num_vars=n)
        visits: Counter[tuple[int, ...]] | None = Counter() if trace_states else None
        stats.state_visits = visits

        stats.nodes[0] += 1
        if visits is not None:
            visits[(0,) + self.clause_vector()] += 1
        decision = self.decide()
        self._record_split(stats, 0, decision)
        stack = [SearchFrame(0, decision.children, len(self._trail))]
        while stack:
            frame = stack[-1]
            if frame.done:
                stack.pop()
                continue
            self._undo(frame.mark)
            vertex, color = frame.take()
            self._assign(vertex, color)
            height = frame.height + 1
            stats.nodes[height] += 1
            if len(self._buckets[0]):
                stats.contradiction_leaves[height] += 1
                continue
            if visits is not None:
                visits[(height,) + self.clause_vector()] += 1
            if height == n:
                stats.solution_leaves[height] += 1
                stats.count += 1
                if mode is SolveMode.DECIDE:
                    stats.halted = True
                    break
                continue
            decision = self.decide()
            self._record_split(stats, height, decision)
            stack.append(SearchFrame(height, decision.children, len(self._trail)))
        self._undo(0)
        return stats


def dpll_col(
    graph: Graph,
    mode: Union[SolveMode, str] = SolveMode.COUNT,
    seed: SeedLike = None,
    trace_states: bool = False,
) -> tuple[int | bool, TreeStats]:
    """Proper 3-coloring count (count mode) or colorability (decide mode)."""

    mode = SolveMode(mode)
    engine = ColEngine(graph, as_generator(seed))
    stats = engine.run(mode, trace_states=trace_states)
    if mode is SolveMode.DECIDE:
        return stats.halted, stats
    return stats.count, stats
