"""Dense forward sweep of the clause-vector recursion.

Layers live in a bounding box of clause vectors. One height step expands
the generating-function substitution axis by axis (x1, then x2, then x3).
Each axis has a survive step, which thins or drops units and counts
contradictions, followed by a transfer step, which moves units one axis
down. Split contributions enter between the axes, at the stage where
their extra factor is no longer substituted.
"""

from __future__ import annotations

import logging
import time
from dataclasses import dataclass
from typing import Optional

import numpy as np
from scipy.stats import binom

from src.expectation.kernels import DPProblem, StepCoefficients, step_coefficients
from src.expectation.table import ExpectationTable, StateLayer, log2_of

LOGGER = logging.getLogger(__name__)

DEFAULT_C1_CAP = 64
DEFAULT_MAX_STATES = 60_000_000
DEFAULT_LOG_SPACE_ABOVE_N = 50

Offset = tuple[int, int, int]
Block = tuple[np.ndarray, Offset]


class DPMemoryError(RuntimeError):
    """Raised when a layer's state box would exceed the configured budget."""


@dataclass(frozen=True)
class StepOutcome:
    values: np.ndarray
    offset: Offset
    solution: float
    contradiction: float
    splits2: float
    splits3: float
    dropped: float = 0.0


def _merge(blocks: list[Block]) -> Block:
    blocks = [b for b in blocks if b[0].size]
    if not blocks:
        return np.zeros((1, 1, 1)), (0, 0, 0)
    lo = [min(off[a] for _, off in blocks) for a in range(3)]
    hi = [max(off[a] + vals.shape[a] for vals, off in blocks) for a in range(3)]
    out = np.zeros([h - l for h, l in zip(hi, lo)])
    for vals, off in blocks:
        window = tuple(slice(off[a] - lo[a], off[a] - lo[a] + vals.shape[a]) for a in range(3))
        out[window] += vals
    return out, (lo[0], lo[1], lo[2])


def _with_offset(offset: Offset, axis: int, value: int) -> Offset:
    out = list(offset)
    out[axis] = value
    return out[0], out[1], out[2]


def _survive(values: np.ndarray, offset: Offset, axis: int, keep: float, vanish: float, loss: float) -> tuple[np.ndarray, Offset, float]:
    """Each unit on ``axis`` is kept, vanishes, or is lost (contradiction)."""

    size = values.shape[axis]
    first = offset[axis]
    counts = np.arange(first, first + size)
    total = keep + vanish
    targets = np.arange(first + size)
    if total > 0:
        weights = binom.pmf(targets[None, :], counts[:, None], keep / total) * np.power(total, counts)[:, None]
    else:
        weights = np.zeros((size, first + size))
    out = np.moveaxis(np.tensordot(values, weights, axes=([axis], [0])), -1, axis)
    lost = 0.0
    if loss > 0:
        marginal = values.sum(axis=tuple(a for a in range(3) if a != axis))
        lost = float(np.dot(marginal, -np.expm1(counts * np.log1p(-loss))))
    return out, _with_offset(offset, axis, 0), lost


def _transfer(values: np.ndarray, offset: Offset, upper: int, q: float) -> tuple[np.ndarray, Offset]:
    """Move each unit from ``upper`` to ``upper - 1`` with probability q.

    Works in skew coordinates s = c_lower + c_upper, where the move is a
    binomial thinning of c_upper at fixed s.
    """

    lower = upper - 1
    arr = np.moveaxis(values, (lower, upper), (-2, -1))
    o_up = offset[upper]
    n_low, n_up = arr.shape[-2:]
    n_skew = n_low + n_up - 1
    skew = np.zeros(arr.shape[:-2] + (n_skew, n_up))
    for iu in range(n_up):
        skew[..., iu : iu + n_low, iu] = arr[..., :, iu]
    stay_counts = np.arange(o_up + n_up)
    sources = np.arange(o_up, o_up + n_up)
    thin = binom.pmf(stay_counts[None, :], sources[:, None], 1.0 - q)
    skew = np.tensordot(skew, thin, axes=([-1], [0]))
    out = np.zeros(arr.shape[:-2] + (n_skew + o_up, o_up + n_up))
    for u in range(o_up + n_up):
        start = max(0, u - o_up)
        out[..., start + o_up - u : n_skew + o_up - u, u] = skew[..., start:n_skew, u]
    out = np.moveaxis(out, (-2, -1), (lower, upper))
    return out, _with_offset(offset, upper, 0)


def _substitute(values: np.ndarray, offset: Offset, axis: int, coeffs: StepCoefficients) -> tuple[np.ndarray, Offset, float]:
    ax = coeffs.axes[axis]
    kept = float(ax.kept)
    values, offset, lost = _survive(values, offset, axis, kept, float(ax.vanish), float(ax.loss))
    if axis > 0 and float(ax.down) > 0 and kept > 0:
        values, offset = _transfer(values, offset, axis, float(ax.down) / kept)
    return values, offset, lost


def _drop_first(values: np.ndarray, offset: Offset, axis: int) -> Block:
    """Entries with count >= 1 on ``axis``, shifted down by one."""

    if offset[axis] >= 1:
        return values, _with_offset(offset, axis, offset[axis] - 1)
    tail = np.take(values, np.arange(1, values.shape[axis]), axis=axis)
    return tail, _with_offset(offset, axis, 0)


def _trim(values: np.ndarray, offset: Offset, threshold: float) -> tuple[np.ndarray, Offset, float]:
    """Zero entries below ``threshold`` and crop the box to what is left."""

    small = values < threshold
    dropped = float(values[small].sum())
    values, offset = _crop(np.where(small, 0.0, values), offset)
    return values, offset, dropped


def _step(
    values: np.ndarray,
    offset: Offset,
    problem: DPProblem,
    coeffs: StepCoefficients,
    prune: float = 0.0,
) -> StepOutcome:
    threshold = prune * float(values.sum())
    dropped = 0.0
    solution = 0.0
    if problem.is_sat and offset == (0, 0, 0):
        solution = float(values[0, 0, 0])
        values = values.copy()
        values[0, 0, 0] = 0.0

    o1, o2, o3 = offset
    after_axis1: list[Block] = []
    after_axis2: list[Block] = []
    splits2 = splits3 = 0.0
    if o1 == 0:
        plane = values[:1]
        unit: Block = (values[1:], (0, o2, o3))
    else:
        plane = values[:0]
        unit = (values, (o1 - 1, o2, o3))

    if plane.size:
        if problem is DPProblem.SAT_UC:
            after_axis1.append((2.0 * plane, (0, o2, o3)))
            splits2 = float(plane.sum())
        else:
            two, two_off = _drop_first(plane, (0, o2, o3), axis=1)
            if o2 == 0:
                three, three_off = _drop_first(plane[:, :1, :], (0, 0, o3), axis=2)
            else:
                three, three_off = plane[:, :0, :], (0, 0, o3)
            if problem is DPProblem.SAT_GUC:
                after_axis1.append((two, two_off))
                after_axis1.append((two, (1, two_off[1], two_off[2])))
                after_axis2.append((three, three_off))
                after_axis2.append((three, (0, 1, three_off[2])))
                splits2 = float(two.sum() + three.sum())
            else:
                after_axis1.append((2.0 * two, two_off))
                after_axis2.append((3.0 * three, three_off))
                splits2 = float(two.sum())
                splits3 = float(three.sum())

    contradiction = 0.0
    blocks = list(after_axis1)
    if unit[0].size:
        vals, off, contradiction = _substitute(unit[0], unit[1], 0, coeffs)
        blocks.append((vals, off))
    merged, off = _merge(blocks)
    merged, off, _ = _substitute(merged, off, 1, coeffs)
    if threshold > 0:
        merged, off, lost = _trim(merged, off, threshold)
        dropped += lost
    merged, off = _merge([(merged, off)] + after_axis2)
    merged, off, _ = _substitute(merged, off, 2, coeffs)
    return StepOutcome(
        values=merged,
        offset=off,
        solution=solution,
        contradiction=contradiction,
        splits2=splits2,
        splits3=splits3,
        dropped=dropped,
    )


def _crop(values: np.ndarray, offset: Offset) -> Block:
    nonzero = np.nonzero(values)
    if nonzero[0].size == 0:
        return np.zeros((1, 1, 1)), (0, 0, 0)
    lo = [int(idx.min()) for idx in nonzero]
    hi = [int(idx.max()) + 1 for idx in nonzero]
    window = tuple(slice(l, h) for l, h in zip(lo, hi))
    return values[window].copy(), (offset[0] + lo[0], offset[1] + lo[1], offset[2] + lo[2])


def _box_estimate(values: np.ndarray) -> int:
    """Size of the largest working array the next step allocates."""

    s1, s2, s3 = values.shape
    return (s1 + s2) * (s2 + s3) * max(s3, 1)


def initial_layer(problem: DPProblem, n: int, param: float) -> StateLayer:
    if problem.is_sat:
        m = int(param)
        if m != param or m < 0:
            raise ValueError(f"clause count must be a nonnegative integer, got {param}")
        return StateLayer(height=0, offset=(0, 0, m), values=np.ones((1, 1, 1)))
    return StateLayer(height=0, offset=(0, 0, n), values=np.ones((1, 1, 1)))


def dp_expect(
    n: int,
    param: float,
    problem: DPProblem | str,
    prune: float = 0.0,
    c1_cap: int = DEFAULT_C1_CAP,
    max_states: int = DEFAULT_MAX_STATES,
    log_space_above_n: int = DEFAULT_LOG_SPACE_ABOVE_N,
    keep_layers: bool = True,
) -> ExpectationTable:
    """Expected search-tree statistics at finite N.

    ``param`` is the clause count M for SAT and the average degree c for
    COL. States whose mass falls below ``prune`` times the layer total are
    dropped; prune = 0 keeps the sweep exact up to rounding.
    """

    problem = DPProblem(problem)
    if n < 1:
        raise ValueError("n must be positive")
    if not 0.0 <= prune <= 1e-12:
        raise ValueError("prune must lie in [0, 1e-12]")
    started = time.perf_counter()
    rescale = n > log_space_above_n

    layer = initial_layer(problem, n, param)
    layers: list[StateLayer] = []
    log2_solution = np.full(n + 1, -np.inf)
    log2_contradiction = np.full(n + 1, -np.inf)
    log2_splits2 = np.full(n + 1, -np.inf)
    log2_splits3 = np.full(n + 1, -np.inf)
    log2_nodes = np.full(n + 1, -np.inf)
    discarded = np.zeros(n + 1)
    peak_states = 0

    for height in range(n + 1):
        scale = layer.log2_scale
        log2_nodes[height] = np.logaddexp2(layer.log2_total(), log2_contradiction[height])
        if keep_layers:
            layers.append(layer)
        peak_states = max(peak_states, layer.values.size)
        if height == n:
            if layer.offset == (0, 0, 0):
                log2_solution[height] = log2_of(float(layer.values[0, 0, 0])) + scale
            break

        estimate = _box_estimate(layer.values)
        if estimate > max_states:
            raise DPMemoryError(
                f"state-space estimate {estimate} at height {height} exceeds the budget of {max_states}"
            )
        coeffs = step_coefficients(problem, n, height, param)
        outcome = _step(layer.values, layer.offset, problem, coeffs, prune)
        log2_solution[height] = log2_of(outcome.solution) + scale
        log2_splits2[height] = log2_of(outcome.splits2) + scale
        log2_splits3[height] = log2_of(outcome.splits3) + scale
        log2_contradiction[height + 1] = log2_of(outcome.contradiction) + scale

        values, offset = outcome.values, outcome.offset
        dropped = outcome.dropped
        if offset[0] + values.shape[0] - 1 > c1_cap:
            keep = max(c1_cap + 1 - offset[0], 0)
            dropped += float(values[keep:].sum())
            values = values[:keep]
        if prune > 0 and values.size:
            total = float(values.sum())
            small = values < prune * total
            dropped += float(values[small].sum())
            values = np.where(small, 0.0, values)
        values, offset = _crop(values, offset)
        discarded[height + 1] = dropped * np.exp2(scale)

        new_scale = scale
        if rescale:
            peak = float(values.max())
            if peak > 0:
                exponent = int(np.frexp(peak)[1])
                values = np.ldexp(values, -exponent)
                new_scale = scale + exponent
        layer = StateLayer(height=height + 1, offset=offset, values=values, log2_scale=new_scale)
        LOGGER.debug(
            "height=%d states=%d box=%s offset=%s dropped=%.3g",
            height + 1,
            int(np.count_nonzero(values)),
            values.shape,
            offset,
            dropped,
        )

    table = ExpectationTable(
        n=n,
        problem=problem,
        param=float(param),
        prune=prune,
        c1_cap=c1_cap,
        layers=layers,
        log2_solution=log2_solution,
        log2_contradiction=log2_contradiction,
        log2_splits2=log2_splits2,
        log2_splits3=log2_splits3,
        log2_nodes=log2_nodes,
        discarded=discarded,
    )
    LOGGER.info(
        "dp problem=%s n=%d param=%s peak_box=%d discarded=%.3g elapsed=%.2fs",
        problem.value,
        n,
        param,
        peak_states,
        float(discarded.sum()),
        time.perf_counter() - started,
    )
    return table


def reachable_states(table: ExpectationTable, limit: Optional[int] = None) -> list[tuple[tuple[int, int, int], int]]:
    """(clause vector, height) pairs carrying positive mass, excluding the final height."""

    out: list[tuple[tuple[int, int, int], int]] = []
    for layer in table.layers[:-1]:
        for c, _ in layer.states():
            out.append((c, layer.height))
            if limit is not None and len(out) >= limit:
                return out
    return out
