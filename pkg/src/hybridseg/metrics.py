"""Binary segmentation quality measures.

All measures compare an observed mask against a ground-truth mask of the
same shape. Ratios with an empty denominator (precision on an all-zero
observation, for instance) are reported as ``None`` rather than silently 0
or 1; report writers render them as "n/a". Everything here is stateless and
safe for concurrent use.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .validation import check_mask, check_same_shape

__all__ = [
    "ConfusionCounts",
    "MetricReport",
    "confusion",
    "jaccard",
    "jaccard_distance",
    "dice",
    "accuracy",
    "precision",
    "recall",
    "specificity",
    "f_measure",
    "g_measure",
    "metric_report",
]


@dataclass(frozen=True)
class ConfusionCounts:
    """Pixel counts of the four agreement classes."""

    tp: int
    fp: int
    fn: int
    tn: int

    @property
    def total(self) -> int:
        return self.tp + self.fp + self.fn + self.tn


@dataclass(frozen=True)
class MetricReport:
    """All quality measures for one (observed, truth) pair.

    Fields that can be undefined hold ``None`` in that case.
    """

    jaccard: float
    jaccard_distance: float
    dice: float
    accuracy: float
    precision: float | None
    recall: float | None
    specificity: float | None
    f_measure: float | None
    g_measure: float | None


def _pair(observed, truth) -> tuple[np.ndarray, np.ndarray]:
    obs = check_mask(observed, name="observed")
    tru = check_mask(truth, name="truth")
    check_same_shape(obs, tru)
    return obs.astype(bool), tru.astype(bool)


def confusion(observed, truth) -> ConfusionCounts:
    """Count TP/FP/FN/TN pixels of an observed mask against the truth."""
    obs, tru = _pair(observed, truth)
    tp = int(np.count_nonzero(obs & tru))
    fp = int(np.count_nonzero(obs & ~tru))
    fn = int(np.count_nonzero(~obs & tru))
    tn = int(np.count_nonzero(~obs & ~tru))
    return ConfusionCounts(tp=tp, fp=fp, fn=fn, tn=tn)


def jaccard(observed, truth) -> float:
    """Overlap over union, via sum(min) / sum(max) of the bit vectors.

    Two empty masks count as identical: the result is 1.
    """
    obs, tru = _pair(observed, truth)
    smin = int(np.minimum(obs, tru).sum())
    smax = int(np.maximum(obs, tru).sum())
    return 1.0 if smax == 0 else smin / smax


def jaccard_distance(observed, truth) -> float:
    """Dissimilarity: exactly 1 - jaccard."""
    return 1.0 - jaccard(observed, truth)


def dice(observed, truth) -> float:
    """Spatial-overlap coefficient 2 tp / (2 tp + fp + fn); both-empty -> 1."""
    c = confusion(observed, truth)
    positives = 2 * c.tp + c.fp + c.fn
    return 1.0 if positives == 0 else 2 * c.tp / positives


def accuracy(c: ConfusionCounts) -> float:
    """Fraction of pixels classified correctly."""
    if c.total == 0:
        raise ValueError("accuracy is undefined for zero-pixel masks")
    return (c.tp + c.tn) / c.total


def precision(c: ConfusionCounts) -> float | None:
    """tp / (tp + fp); None when nothing was marked positive."""
    denom = c.tp + c.fp
    return None if denom == 0 else c.tp / denom


def recall(c: ConfusionCounts) -> float | None:
    """tp / (tp + fn); None when the truth has no positives."""
    denom = c.tp + c.fn
    return None if denom == 0 else c.tp / denom


def specificity(c: ConfusionCounts) -> float | None:
    """tn / (tn + fp); None when the truth has no negatives."""
    denom = c.tn + c.fp
    return None if denom == 0 else c.tn / denom


def f_measure(p: float | None, r: float | None) -> float | None:
    """Harmonic mean of precision and recall; None when undefined."""
    if p is None or r is None or p + r == 0.0:
        return None
    return 2.0 * p * r / (p + r)


def g_measure(p: float | None, r: float | None) -> float | None:
    """Geometric mean of precision and recall; None when undefined."""
    if p is None or r is None:
        return None
    return math.sqrt(p * r)


def metric_report(observed, truth) -> MetricReport:
    """Compute every measure from a single confusion pass."""
    c = confusion(observed, truth)
    marked = c.tp + c.fp + c.fn
    j = 1.0 if marked == 0 else c.tp / marked
    d = 1.0 if marked == 0 else 2 * c.tp / (c.tp + marked)
    p = precision(c)
    r = recall(c)
    return MetricReport(
        jaccard=j,
        jaccard_distance=1.0 - j,
        dice=d,
        accuracy=accuracy(c),
        precision=p,
        recall=r,
        specificity=specificity(c),
        f_measure=f_measure(p, r),
        g_measure=g_measure(p, r),
    )
