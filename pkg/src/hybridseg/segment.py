"""Segmentation algorithms.

Three segmenters share this module: best-first seeded region growing,
iterative global thresholding, and their pixelwise-product hybrid. All are
pure and deterministic, so the two component segmentations of the hybrid can
safely run concurrently and still match sequential results bit for bit.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass

import numpy as np

from .validation import check_image, check_seed

__all__ = [
    "DEFAULT_DELTA_T",
    "MAX_THRESHOLD_ITERATIONS",
    "RegionGrowParams",
    "ThresholdTrace",
    "center_seed",
    "region_grow",
    "apply_threshold",
    "iterative_threshold",
    "hybrid_segment",
]

DEFAULT_DELTA_T = 1.0 / 255.0
MAX_THRESHOLD_ITERATIONS = 1000

_OFFSETS = {
    "four": ((-1, 0), (1, 0), (0, -1), (0, 1)),
    "eight": ((-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1)),
}


@dataclass(frozen=True)
class RegionGrowParams:
    """Region-growing controls.

    ``tolerance`` is the largest admissible |intensity - region mean|;
    ``connectivity`` is the neighbor relation, "four" or "eight".
    """

    tolerance: float = 0.1
    connectivity: str = "eight"

    def __post_init__(self) -> None:
        if self.tolerance < 0.0:
            raise ValueError("tolerance must be >= 0")
        if self.connectivity not in _OFFSETS:
            raise ValueError('connectivity must be "four" or "eight"')


@dataclass(frozen=True)
class ThresholdTrace:
    """Record of one iterative-threshold run.

    ``history`` holds one (t, m1, m2) triple per iteration, where ``t`` is
    the threshold at the start of the iteration and m1/m2 are the bright and
    dark class means. ``converged`` is False only when the iteration cap was
    hit before the threshold settled.
    """

    final_t: float
    iterations: int
    history: tuple[tuple[float, float, float], ...]
    converged: bool = True

    def __post_init__(self) -> None:
        if len(self.history) != self.iterations:
            raise ValueError("history length must equal iterations")


def center_seed(img) -> tuple[int, int]:
    """Center pixel (floor(height / 2), floor(width / 2)) of an image."""
    arr = check_image(img)
    return arr.shape[0] // 2, arr.shape[1] // 2


def region_grow(img, seed, params: RegionGrowParams | None = None) -> np.ndarray:
    """Grow a single region from `seed`, best-first, and return its mask.

    The region starts as the seed pixel. A frontier holds every
    not-yet-admitted neighbor of the region; each step admits the frontier
    pixel whose intensity is closest to the running region mean, provided
    the difference does not exceed ``params.tolerance``, then extends the
    frontier with the newcomer's unvisited neighbors. Growth stops when the
    closest candidate is too far from the mean or the frontier empties.
    Ties on the minimum difference break in row-major pixel order.

    The mean is a running sum over admitted pixels divided by their count,
    updated after every admission in double precision.
    """
    arr = check_image(img)
    params = params if params is not None else RegionGrowParams()
    row0, col0 = check_seed(arr, seed)
    height, width = arr.shape
    tol = float(params.tolerance)
    offsets = _OFFSETS[params.connectivity]
    values = arr.tolist()

    UNSEEN, QUEUED, ADMITTED = 0, 1, 2
    state = [bytearray(width) for _ in range(height)]
    state[row0][col0] = ADMITTED
    region_sum = values[row0][col0]
    count = 1
    mean = region_sum

    # Two heaps split the frontier around the running mean: `low` pops the
    # largest intensity <= mean, `high` the smallest intensity > mean, both
    # row-major among equal intensities. The overall best candidate is one
    # of the two tops.
    low: list[tuple[float, int, int]] = []  # (-value, row, col)
    high: list[tuple[float, int, int]] = []  # (value, row, col)

    def enqueue(r: int, c: int) -> None:
        v = values[r][c]
        if v <= mean:
            heapq.heappush(low, (-v, r, c))
        else:
            heapq.heappush(high, (v, r, c))

    for dr, dc in offsets:
        nr, nc = row0 + dr, col0 + dc
        if 0 <= nr < height and 0 <= nc < width and state[nr][nc] == UNSEEN:
            state[nr][nc] = QUEUED
            enqueue(nr, nc)

    while low or high:
        # Rebalance: the mean moved, so heap tops may sit on the wrong side.
        while low and -low[0][0] > mean:
            nv, r, c = heapq.heappop(low)
            heapq.heappush(high, (-nv, r, c))
        while high and high[0][0] <= mean:
            v, r, c = heapq.heappop(high)
            heapq.heappush(low, (-v, r, c))

        if low and high:
            d_low = mean - (-low[0][0])
            d_high = high[0][0] - mean
            if d_low < d_high:
                pick_low = True
            elif d_high < d_low:
                pick_low = False
            else:
                pick_low = (low[0][1], low[0][2]) < (high[0][1], high[0][2])
        else:
            pick_low = bool(low)

        if pick_low:
            nv, row, col = heapq.heappop(low)
            value = -nv
            diff = mean - value
        else:
            value, row, col = heapq.heappop(high)
            diff = value - mean

        if diff > tol:
            break

        state[row][col] = ADMITTED
        region_sum += value
        count += 1
        mean = region_sum / count
        for dr, dc in offsets:
            nr, nc = row + dr, col + dc
            if 0 <= nr < height and 0 <= nc < width and state[nr][nc] == UNSEEN:
                state[nr][nc] = QUEUED
                enqueue(nr, nc)

    mask = np.array(state, dtype=np.uint8)
    return (mask == ADMITTED).astype(np.uint8)


def apply_threshold(img, t: float) -> np.ndarray:
    """Binarize: 1 where intensity strictly exceeds `t`, else 0."""
    arr = check_image(img)
    if not 0.0 <= t <= 1.0:
        raise ValueError("threshold must lie in [0, 1]")
    return (arr > t).astype(np.uint8)


def iterative_threshold(img, delta_t: float = DEFAULT_DELTA_T) -> tuple[ThresholdTrace, np.ndarray]:
    """Global threshold by iterated class-mean splitting.

    Starting from the global mean intensity, each iteration splits the
    pixels at the current threshold, averages the bright and dark classes,
    and moves the threshold to the midpoint of the two means. Iteration
    stops once the threshold moves by at most ``delta_t``, when either
    class empties (the threshold is then left unchanged), or at a hard cap
    of 1000 iterations, which is reported via ``converged=False``.

    Returns the trace and the mask from :func:`apply_threshold` at the
    final threshold.
    """
    arr = check_image(img)
    if delta_t <= 0.0:
        raise ValueError("delta_t must be > 0")
    flat = arr.ravel()
    t = float(flat.mean())
    history: list[tuple[float, float, float]] = []
    converged = False
    for _ in range(MAX_THRESHOLD_ITERATIONS):
        bright = flat[flat > t]
        dark = flat[flat <= t]
        if bright.size == 0 or dark.size == 0:
            converged = True
            break
        m1 = float(bright.mean())
        m2 = float(dark.mean())
        history.append((t, m1, m2))
        t_new = (m1 + m2) / 2.0
        settled = abs(t - t_new) <= delta_t
        t = t_new
        if settled:
            converged = True
            break
    trace = ThresholdTrace(
        final_t=t, iterations=len(history), history=tuple(history), converged=converged
    )
    return trace, apply_threshold(arr, t)


def hybrid_segment(
    img,
    params: RegionGrowParams | None = None,
    delta_t: float = DEFAULT_DELTA_T,
) -> np.ndarray:
    """Pixelwise product of region growing (from the center seed) and the
    iterative-threshold mask.

    The product of binary masks is their logical AND, so the result is a
    subset of both component masks.
    """
    arr = check_image(img)
    region = region_grow(arr, center_seed(arr), params)
    _, thresholded = iterative_threshold(arr, delta_t)
    return region & thresholded
