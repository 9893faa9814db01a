"""Input validation helpers shared across the toolkit.

Every public entry point funnels its array arguments through these checks so
that shape, range, and dtype problems surface early with consistent messages.
Images are 2-D float64 arrays with intensities in [0, 1]; masks are 2-D uint8
arrays with values in {0, 1}. Both are treated as read-only once built.
"""

from __future__ import annotations

import numpy as np

__all__ = ["check_image", "check_mask", "check_same_shape", "check_seed"]


def check_image(img, *, name: str = "image") -> np.ndarray:
    """Validate a grayscale image and return it as a float64 array.

    Requirements: 2-D, non-empty, all values finite and within [0, 1].
    No copy is made when the input is already a float64 array.
    """
    arr = np.asarray(img, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be a 2-D array, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError(f"{name} must be non-empty")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains non-finite values")
    if float(arr.min()) < 0.0 or float(arr.max()) > 1.0:
        raise ValueError(f"{name} intensities must lie in [0, 1]")
    return arr


def check_mask(mask, *, name: str = "mask") -> np.ndarray:
    """Validate a binary mask and return it as a uint8 array of {0, 1}."""
    arr = np.asarray(mask)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be a 2-D array, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError(f"{name} must be non-empty")
    if arr.dtype == bool:
        return arr.astype(np.uint8)
    if not np.isin(arr, (0, 1)).all():
        raise ValueError(f"{name} must contain only 0 and 1")
    return arr.astype(np.uint8)


def check_same_shape(a: np.ndarray, b: np.ndarray, *, names: tuple[str, str] = ("observed", "truth")) -> None:
    """Raise ValueError when the two arrays do not share dimensions."""
    if a.shape != b.shape:
        raise ValueError(f"{names[0]} shape {a.shape} does not match {names[1]} shape {b.shape}")


def check_seed(img: np.ndarray, seed) -> tuple[int, int]:
    """Validate a (row, col) seed against an image, returning it as ints."""
    try:
        row, col = seed
    except (TypeError, ValueError):
        raise ValueError(f"seed must be a (row, col) pair, got {seed!r}") from None
    row, col = int(row), int(col)
    height, width = img.shape
    if not (0 <= row < height and 0 <= col < width):
        raise IndexError(f"seed ({row}, {col}) out of bounds for {height}x{width} image")
    return row, col
