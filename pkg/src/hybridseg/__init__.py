"""Grayscale image segmentation toolkit.

Segmenters (seeded region growing, iterative global thresholding, and their
pixelwise-product hybrid), a preprocessing chain, binary-mask quality
metrics, a synthetic phantom generator, and a batch pipeline with a CLI.

Images are 2-D float64 arrays with intensities in [0, 1]; masks are 2-D
uint8 arrays of {0, 1}. Both surfaces are available: plain functions here,
and sklearn-style estimators in :mod:`hybridseg.estimators`.
"""

from .config import ALGORITHMS, CaseSpec, ConfigError, RunConfig, parse_config
from .estimators import (
    ContrastStretch,
    HybridSegmenter,
    IterativeThresholdSegmenter,
    MedianSmoother,
    RegionGrowingSegmenter,
    WaveletDenoiser,
)
from .io import ImageFormatError, load_image, load_mask, rgb_to_gray, save_image, save_mask
from .metrics import (
    ConfusionCounts,
    MetricReport,
    accuracy,
    confusion,
    dice,
    f_measure,
    g_measure,
    jaccard,
    jaccard_distance,
    metric_report,
    precision,
    recall,
    specificity,
)
from .phantom import Phantom, make_phantom
from .pipeline import CSV_HEADER, CaseResult, emit_report, run_pipeline
from .preprocess import (
    PreprocessConfig,
    SwtPyramid,
    contrast_stretch,
    median_filter,
    preprocess,
    swt_decompose,
    swt_denoise,
    swt_reconstruct,
)
from .segment import (
    DEFAULT_DELTA_T,
    RegionGrowParams,
    ThresholdTrace,
    apply_threshold,
    center_seed,
    hybrid_segment,
    iterative_threshold,
    region_grow,
)

__version__ = "0.1.0"

__all__ = [
    "ALGORITHMS",
    "CSV_HEADER",
    "DEFAULT_DELTA_T",
    "CaseResult",
    "CaseSpec",
    "ConfigError",
    "ConfusionCounts",
    "ContrastStretch",
    "HybridSegmenter",
    "ImageFormatError",
    "IterativeThresholdSegmenter",
    "MedianSmoother",
    "MetricReport",
    "Phantom",
    "PreprocessConfig",
    "RegionGrowParams",
    "RegionGrowingSegmenter",
    "RunConfig",
    "SwtPyramid",
    "ThresholdTrace",
    "WaveletDenoiser",
    "accuracy",
    "apply_threshold",
    "center_seed",
    "confusion",
    "contrast_stretch",
    "dice",
    "emit_report",
    "f_measure",
    "g_measure",
    "hybrid_segment",
    "iterative_threshold",
    "jaccard",
    "jaccard_distance",
    "load_image",
    "load_mask",
    "make_phantom",
    "median_filter",
    "metric_report",
    "parse_config",
    "precision",
    "preprocess",
    "recall",
    "region_grow",
    "rgb_to_gray",
    "run_pipeline",
    "save_image",
    "save_mask",
    "specificity",
    "swt_decompose",
    "swt_denoise",
    "swt_reconstruct",
]
