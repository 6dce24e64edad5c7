"""Per-state kernel sweep, in floats or exact fractions."""

from __future__ import annotations

import logging
from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Union

import numpy as np

from src.expectation.kernels import ClauseVector, DPProblem, KernelError, Number, kernel_for
from src.expectation.table import ExpectationTable, StateLayer, log2_of

LOGGER = logging.getLogger(__name__)

DEFAULT_EXACT_MAX_N = 12


@dataclass
class SparseExpectation:
    n: int
    problem: DPProblem
    param: float
    exact: bool
    layers: list[dict[ClauseVector, Number]] = field(default_factory=list)
    solution: list[Number] = field(default_factory=list)
    contradiction: list[Number] = field(default_factory=list)
    splits2: list[Number] = field(default_factory=list)
    splits3: list[Number] = field(default_factory=list)

    def value(self, c: ClauseVector, height: int) -> Number:
        return self.layers[height].get(c, 0)

    def layer_total(self, height: int) -> Number:
        return sum(self.layers[height].values(), Fraction(0) if self.exact else 0.0)

    def total_leaves(self) -> Number:
        zero: Union[int, Fraction] = Fraction(0) if self.exact else 0
        return sum(self.solution, zero) + sum(self.contradiction, zero)

    def to_table(self) -> ExpectationTable:
        layers = []
        for height, states in enumerate(self.layers):
            layers.append(_to_layer(height, states))
        nodes = [
            float(self.layer_total(t)) + float(self.contradiction[t]) for t in range(self.n + 1)
        ]
        return ExpectationTable(
            n=self.n,
            problem=self.problem,
            param=self.param,
            prune=0.0,
            c1_cap=self.n + int(self.param) + 1,
            layers=layers,
            log2_solution=_log2_profile(self.solution),
            log2_contradiction=_log2_profile(self.contradiction),
            log2_splits2=_log2_profile(self.splits2),
            log2_splits3=_log2_profile(self.splits3),
            log2_nodes=_log2_profile(nodes),
            discarded=np.zeros(self.n + 1),
        )


def _log2_profile(values: list[Number]) -> np.ndarray:
    return np.array([log2_of(float(v)) for v in values])


def _to_layer(height: int, states: dict[ClauseVector, Number]) -> StateLayer:
    live = {c: float(v) for c, v in states.items() if v != 0}
    if not live:
        return StateLayer(height=height, offset=(0, 0, 0), values=np.zeros((1, 1, 1)))
    coords = np.array(list(live.keys()))
    lo = coords.min(axis=0)
    hi = coords.max(axis=0)
    values = np.zeros(tuple(int(x) for x in hi - lo + 1))
    for (c1, c2, c3), v in live.items():
        values[c1 - lo[0], c2 - lo[1], c3 - lo[2]] = v
    return StateLayer(height=height, offset=(int(lo[0]), int(lo[1]), int(lo[2])), values=values)


def dp_expect_sparse(
    n: int,
    param: float,
    problem: DPProblem | str,
    exact: bool = False,
    exact_max_n: int = DEFAULT_EXACT_MAX_N,
) -> SparseExpectation:
    """Apply one kernel row per reachable state and height."""

    problem = DPProblem(problem)
    if n < 1:
        raise ValueError("n must be positive")
    if exact and n > exact_max_n:
        raise KernelError(f"exact mode is limited to n <= {exact_max_n}, got {n}")
    zero: Number = Fraction(0) if exact else 0.0
    one: Number = Fraction(1) if exact else 1.0

    if problem.is_sat:
        m = int(param)
        if m != param or m < 0:
            raise ValueError(f"clause count must be a nonnegative integer, got {param}")
        start: ClauseVector = (0, 0, m)
    else:
        start = (0, 0, n)

    result = SparseExpectation(n=n, problem=problem, param=float(param), exact=exact)
    result.solution = [zero] * (n + 1)
    result.contradiction = [zero] * (n + 1)
    result.splits2 = [zero] * (n + 1)
    result.splits3 = [zero] * (n + 1)
    layer: dict[ClauseVector, Number] = {start: one}

    for height in range(n + 1):
        result.layers.append(layer)
        if height == n:
            result.solution[height] += layer.get((0, 0, 0), zero)
            break
        following: dict[ClauseVector, Number] = defaultdict(lambda: zero)
        for c, mass in layer.items():
            if mass == 0:
                continue
            if problem.is_sat and c == (0, 0, 0):
                result.solution[height] += mass
                continue
            row = kernel_for(problem, c, height, n, param, exact)
            for target, weight in row.targets.items():
                following[target] += mass * weight
            result.contradiction[height + 1] += mass * row.contradiction
            if c[0] == 0:
                if row.branches == 3:
                    result.splits3[height] += mass
                else:
                    result.splits2[height] += mass
        layer = dict(following)
        LOGGER.debug("sparse height=%d states=%d", height + 1, len(layer))

    LOGGER.info(
        "sparse dp problem=%s n=%d param=%s exact=%s states=%d",
        problem.value,
        n,
        param,
        exact,
        sum(len(states) for states in result.layers),
    )
    return result
