"""Scikit-learn style wrappers around the functional toolkit.

The transformers and segmenters below follow the estimator conventions
(``fit``/``transform``/``predict`` plus ``get_params``/``set_params`` from
``BaseEstimator``) so the pixel operations compose with
``sklearn.pipeline.Pipeline`` and friends. ``X`` is always a single 2-D
grayscale image in [0, 1].

The segmenters mirror the clustering idiom for transductive algorithms:
``fit`` computes the segmentation of ``X`` and stores it as ``mask_``, and
``fit_predict`` returns it. Only the threshold segmenter learns state that
transfers to new images (the fitted threshold), so only it offers
``predict``.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, TransformerMixin
from sklearn.exceptions import NotFittedError

from .preprocess import median_filter, swt_denoise
from .segment import (
    DEFAULT_DELTA_T,
    RegionGrowParams,
    apply_threshold,
    center_seed,
    iterative_threshold,
    region_grow,
)
from .validation import check_image

__all__ = [
    "ContrastStretch",
    "MedianSmoother",
    "WaveletDenoiser",
    "RegionGrowingSegmenter",
    "IterativeThresholdSegmenter",
    "HybridSegmenter",
]


class ContrastStretch(TransformerMixin, BaseEstimator):
    """Percentile contrast stretch.

    ``fit`` records the low/high intensity percentiles of the fitted image
    as ``lo_`` and ``hi_``; ``transform`` maps them linearly onto [0, 1]
    with clamping. ``fit_transform`` therefore matches
    :func:`hybridseg.preprocess.contrast_stretch`.
    """

    def __init__(self, low_pct: float = 1.0, high_pct: float = 99.0):
        self.low_pct = low_pct
        self.high_pct = high_pct

    def fit(self, X, y=None):
        X = check_image(X)
        if not 0.0 <= self.low_pct < 50.0:
            raise ValueError("low_pct must lie in [0, 50)")
        if not 50.0 < self.high_pct <= 100.0:
            raise ValueError("high_pct must lie in (50, 100]")
        self.lo_ = float(np.percentile(X, self.low_pct))
        self.hi_ = float(np.percentile(X, self.high_pct))
        return self

    def transform(self, X):
        if not hasattr(self, "lo_"):
            raise NotFittedError("ContrastStretch is not fitted")
        X = check_image(X)
        if self.hi_ == self.lo_:
            return X.copy()
        return np.clip((X - self.lo_) / (self.hi_ - self.lo_), 0.0, 1.0)


class MedianSmoother(TransformerMixin, BaseEstimator):
    """Stateless square median filter with replicated edges."""

    def __init__(self, window: int = 3):
        self.window = window

    def fit(self, X, y=None):
        check_image(X)
        return self

    def transform(self, X):
        return median_filter(X, self.window)


class WaveletDenoiser(TransformerMixin, BaseEstimator):
    """Stateless undecimated-Haar soft-threshold denoiser.

    ``levels=0`` turns the stage into a pass-through, matching the
    pipeline's "denoising disabled" configuration.
    """

    def __init__(self, levels: int = 1):
        self.levels = levels

    def fit(self, X, y=None):
        check_image(X)
        if self.levels < 0:
            raise ValueError("levels must be >= 0")
        return self

    def transform(self, X):
        if self.levels == 0:
            return check_image(X).copy()
        return swt_denoise(X, self.levels)


class RegionGrowingSegmenter(BaseEstimator):
    """Best-first seeded region growing (transductive; no ``predict``).

    ``seed=None`` grows from the image's center pixel. After ``fit``, the
    mask is available as ``mask_`` and the seed used as ``seed_``.
    """

    def __init__(self, tolerance: float = 0.1, connectivity: str = "eight", seed=None):
        self.tolerance = tolerance
        self.connectivity = connectivity
        self.seed = seed

    def fit(self, X, y=None):
        X = check_image(X)
        params = RegionGrowParams(tolerance=self.tolerance, connectivity=self.connectivity)
        self.seed_ = tuple(self.seed) if self.seed is not None else center_seed(X)
        self.mask_ = region_grow(X, self.seed_, params)
        return self

    def fit_predict(self, X, y=None):
        return self.fit(X).mask_


class IterativeThresholdSegmenter(BaseEstimator):
    """Iterative mean-split global threshold.

    ``fit`` runs the iteration on ``X`` and stores ``threshold_``,
    ``trace_``, and ``mask_``; ``predict`` applies the fitted threshold to
    any image of matching range.
    """

    def __init__(self, delta_t: float = DEFAULT_DELTA_T):
        self.delta_t = delta_t

    def fit(self, X, y=None):
        self.trace_, self.mask_ = iterative_threshold(X, self.delta_t)
        self.threshold_ = self.trace_.final_t
        return self

    def predict(self, X):
        if not hasattr(self, "threshold_"):
            raise NotFittedError("IterativeThresholdSegmenter is not fitted")
        return apply_threshold(X, self.threshold_)

    def fit_predict(self, X, y=None):
        return self.fit(X).mask_


class HybridSegmenter(BaseEstimator):
    """Product of region growing and iterative thresholding.

    ``fit`` segments ``X`` with both components and stores their logical
    AND as ``mask_``, alongside ``region_mask_``, ``threshold_mask_``, and
    the threshold ``trace_``.
    """

    def __init__(
        self,
        tolerance: float = 0.1,
        connectivity: str = "eight",
        delta_t: float = DEFAULT_DELTA_T,
        seed=None,
    ):
        self.tolerance = tolerance
        self.connectivity = connectivity
        self.delta_t = delta_t
        self.seed = seed

    def fit(self, X, y=None):
        X = check_image(X)
        params = RegionGrowParams(tolerance=self.tolerance, connectivity=self.connectivity)
        seed = tuple(self.seed) if self.seed is not None else center_seed(X)
        self.region_mask_ = region_grow(X, seed, params)
        self.trace_, self.threshold_mask_ = iterative_threshold(X, self.delta_t)
        self.mask_ = self.region_mask_ & self.threshold_mask_
        return self

    def fit_predict(self, X, y=None):
        return self.fit(X).mask_
