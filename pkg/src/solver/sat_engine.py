"""Instrumented #DPLL / DPLL for k-SAT with the UC and GUC split rules."""

from __future__ import annotations

import logging
from collections import Counter
from typing import Union

import numpy as np

from src.instances.generator import SeedLike, as_generator
from src.models.experiment import Heuristic, SolveMode
from src.models.instance import CnfInstance
from src.models.stats import BranchDecision, BranchKind, TreeStats
from src.solver.buckets import IndexedSet, SearchFrame

LOGGER = logging.getLogger(__name__)

_ASSIGN = 0
_SATISFY = 1
_SHRINK = 2


class SolverError(RuntimeError):
    """Raised when a solver run is misconfigured."""


class SatEngine:
    """Clause-length buckets plus an undo trail; one engine per run."""

    def __init__(
        self,
        instance: CnfInstance,
        heuristic: Union[Heuristic, str],
        rng: np.random.Generator,
    ) -> None:
        self._instance = instance
        self._heuristic = Heuristic(heuristic)
        self._rng = rng
        n = instance.num_vars
        m = instance.num_clauses
        self._clauses = instance.clauses
        self._value = [-1] * (n + 1)
        self._length = [len(c) for c in instance.clauses]
        self._satisfied = [False] * m
        self._buckets = [IndexedSet(m) for _ in range(instance.k + 1)]
        self._true_occ: list[list[int]] = [[] for _ in range(n + 1)]
        self._false_occ: list[list[int]] = [[] for _ in range(n + 1)]
        for ci, clause in enumerate(instance.clauses):
            self._buckets[len(clause)].add(ci)
            for lit in clause:
                # clause ci is satisfied by var=1 if lit > 0
                (self._true_occ if lit > 0 else self._false_occ)[abs(lit)].append(ci)
        self._free = IndexedSet(n + 1)
        for var in range(1, n + 1):
            self._free.add(var)
        self._trail: list[tuple[int, int]] = []

    def _assign(self, var: int, value: int) -> None:
        self._value[var] = value
        self._free.remove(var)
        self._trail.append((_ASSIGN, var))
        sat_side = self._true_occ[var] if value == 1 else self._false_occ[var]
        false_side = self._false_occ[var] if value == 1 else self._true_occ[var]
        for ci in sat_side:
            if not self._satisfied[ci]:
                self._satisfied[ci] = True
                self._buckets[self._length[ci]].remove(ci)
                self._trail.append((_SATISFY, ci))
        for ci in false_side:
            if not self._satisfied[ci]:
                length = self._length[ci]
                self._buckets[length].remove(ci)
                self._length[ci] = length - 1
                self._buckets[length - 1].add(ci)
                self._trail.append((_SHRINK, ci))

    def _undo(self, mark: int) -> None:
        trail = self._trail
        while len(trail) > mark:
            op, x = trail.pop()
            if op == _SHRINK:
                length = self._length[x]
                self._buckets[length].remove(x)
                self._length[x] = length + 1
                self._buckets[length + 1].add(x)
            elif op == _SATISFY:
                self._satisfied[x] = False
                self._buckets[self._length[x]].add(x)
            else:
                self._value[x] = -1
                self._free.add(x)

    def _conflict(self) -> bool:
        return len(self._buckets[0]) > 0

    def _active(self) -> int:
        return sum(len(b) for b in self._buckets)

    def clause_vector(self) -> tuple[int, ...]:
        return tuple(len(b) for b in self._buckets[1:])

    def _free_literals(self, ci: int) -> list[int]:
        return [lit for lit in self._clauses[ci] if self._value[abs(lit)] == -1]

    def decide(self) -> BranchDecision:
        rng = self._rng
        if len(self._buckets[1]):
            ci = self._buckets[1].pick(rng)
            (lit,) = self._free_literals(ci)
            return BranchDecision(BranchKind.UNIT, ((abs(lit), int(lit > 0)),), clause=ci)
        if self._heuristic is Heuristic.UC:
            var = self._free.pick(rng)
            first = int(rng.integers(2))
            return BranchDecision(BranchKind.SPLIT, ((var, first), (var, 1 - first)))
        for length in range(2, len(self._buckets)):
            if len(self._buckets[length]):
                ci = self._buckets[length].pick(rng)
                lits = self._free_literals(ci)
                lit = lits[int(rng.integers(len(lits)))]
                satisfying = int(lit > 0)
                return BranchDecision(
                    BranchKind.SPLIT,
                    ((abs(lit), satisfying), (abs(lit), 1 - satisfying)),
                    clause=ci,
                )
        raise SolverError("no clause left to branch on")

    def run(self, mode: Union[SolveMode, str] = SolveMode.COUNT, trace_states: bool = False) -> TreeStats:
        mode = SolveMode(mode)
        n = self._instance.num_vars
        stats = TreeStats(num_vars=n)
        visits: Counter[tuple[int, ...]] | None = Counter() if trace_states else None
        stats.state_visits = visits

        stats.nodes[0] += 1
        if visits is not None:
            visits[(0,) + self.clause_vector()] += 1
        if self._active() == 0:
            stats.solution_leaves[0] += 1
            stats.count += 1 << n
            stats.halted = mode is SolveMode.DECIDE
            return stats

        decision = self.decide()
        if decision.kind is BranchKind.SPLIT:
            stats.splits2[0] += 1
        stack = [SearchFrame(0, decision.children, len(self._trail))]
        while stack:
            frame = stack[-1]
            if frame.done:
                stack.pop()
                continue
            self._undo(frame.mark)
            var, value = frame.take()
            self._assign(var, value)
            height = frame.height + 1
            stats.nodes[height] += 1
            if self._conflict():
                stats.contradiction_leaves[height] += 1
                continue
            if visits is not None:
                visits[(height,) + self.clause_vector()] += 1
            if self._active() == 0:
                stats.solution_leaves[height] += 1
                stats.count += 1 << (n - height)
                if mode is SolveMode.DECIDE:
                    stats.halted = True
                    break
                continue
            decision = self.decide()
            if decision.kind is BranchKind.SPLIT:
                stats.splits2[height] += 1
            stack.append(SearchFrame(height, decision.children, len(self._trail)))
        self._undo(0)
        return stats


def dpll_count_sat(
    instance: CnfInstance,
    heuristic: Union[Heuristic, str] = Heuristic.UC,
    seed: SeedLike = None,
    trace_states: bool = False,
) -> tuple[int, TreeStats]:
    """Exact model count together with the full #DPLL tree statistics."""

    engine = SatEngine(instance, heuristic, as_generator(seed))
    stats = engine.run(SolveMode.COUNT, trace_states=trace_states)
    return stats.count, stats


def dpll_decide_sat(
    instance: CnfInstance,
    heuristic: Union[Heuristic, str] = Heuristic.UC,
    seed: SeedLike = None,
    trace_states: bool = False,
) -> tuple[bool, TreeStats]:
    """Same branching as the counting run, halting at the first solution leaf."""

    engine = SatEngine(instance, heuristic, as_generator(seed))
    stats = engine.run(SolveMode.DECIDE, trace_states=trace_states)
    return stats.halted, stats
