"""Synthetic test image generator.

Produces a bright ellipse (the "tumor") on a dark background, with an
optional dark circular hole inside the ellipse and uniform noise on top.
The paired ground truth is the ellipse raster minus the hole. Useful for
exercising the full pipeline without any real imagery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = ["Phantom", "make_phantom"]


@dataclass(frozen=True)
class Phantom:
    """Geometry and noise parameters for one synthetic image.

    ``center`` and ``hole_center`` are (row, col); ``axes`` is
    (row semi-axis, col semi-axis). ``center`` defaults to the image
    midpoint and ``hole_center`` to the ellipse center. A pixel belongs to
    the ellipse when its squared normalized distance is <= 1 and to the
    hole when its distance from the hole center is strictly below
    ``hole_radius`` (so radius 0 means no hole).
    """

    side: int = 128
    center: tuple[float, float] | None = None
    axes: tuple[float, float] = (20.0, 30.0)
    intensity: float = 0.85
    background: float = 0.15
    hole_radius: float = 6.0
    hole_center: tuple[float, float] | None = None
    noise: float = 0.03
    seed: int = 42

    def __post_init__(self) -> None:
        if self.side < 1:
            raise ValueError("side must be >= 1")
        if self.axes[0] <= 0.0 or self.axes[1] <= 0.0:
            raise ValueError("axes must be positive")
        if not 0.0 <= self.intensity <= 1.0 or not 0.0 <= self.background <= 1.0:
            raise ValueError("intensity and background must lie in [0, 1]")
        if self.hole_radius < 0.0:
            raise ValueError("hole_radius must be >= 0")
        if self.noise < 0.0:
            raise ValueError("noise must be >= 0")
        cr, cc = self.center_rc
        hr, hc = self.hole_center_rc
        ar, ac = self.axes
        # Sufficient containment check: map the hole into the coordinates
        # where the ellipse is a unit circle.
        offset = math.hypot((hr - cr) / ar, (hc - cc) / ac)
        if offset + self.hole_radius / min(ar, ac) >= 1.0:
            raise ValueError("hole must lie strictly inside the ellipse")

    @property
    def center_rc(self) -> tuple[float, float]:
        if self.center is not None:
            return float(self.center[0]), float(self.center[1])
        return float(self.side // 2), float(self.side // 2)

    @property
    def hole_center_rc(self) -> tuple[float, float]:
        if self.hole_center is not None:
            return float(self.hole_center[0]), float(self.hole_center[1])
        return self.center_rc


def make_phantom(p: Phantom | None = None) -> tuple[np.ndarray, np.ndarray]:
    """Rasterize a phantom; returns (image, ground-truth mask).

    Deterministic for a fixed ``p.seed``.
    """
    p = p if p is not None else Phantom()
    rows = np.arange(p.side, dtype=np.float64)[:, None]
    cols = np.arange(p.side, dtype=np.float64)[None, :]
    cr, cc = p.center_rc
    ar, ac = p.axes
    ellipse = ((rows - cr) / ar) ** 2 + ((cols - cc) / ac) ** 2 <= 1.0
    hr, hc = p.hole_center_rc
    hole = (rows - hr) ** 2 + (cols - hc) ** 2 < p.hole_radius**2

    image = np.full((p.side, p.side), p.background, dtype=np.float64)
    image[ellipse] = p.intensity
    image[hole] = p.background
    if p.noise > 0.0:
        rng = np.random.default_rng(p.seed)
        image = image + rng.uniform(-p.noise, p.noise, size=image.shape)
    truth = (ellipse & ~hole).astype(np.uint8)
    return np.clip(image, 0.0, 1.0), truth
