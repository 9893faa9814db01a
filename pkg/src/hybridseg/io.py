"""Image and mask file I/O.

Supported formats are 8-bit PGM (ASCII ``P2`` and binary ``P5``, maxval 255
only) and 8-bit PNG (grayscale or RGB, no alpha). Samples are normalized to
[0, 1] on load (``s / 255``) and quantized back to 8 bits on save, so a save
followed by a load is the identity on 8-bit data.
"""

from __future__ import annotations

import os

import numpy as np
from PIL import Image

from .validation import check_image, check_mask

__all__ = [
    "ImageFormatError",
    "rgb_to_gray",
    "load_image",
    "load_mask",
    "save_image",
    "save_mask",
]

_MASK_THRESHOLD = 128.0 / 255.0  # sample >= 128 counts as foreground


class ImageFormatError(ValueError):
    """Raised for unsupported or malformed image files."""


def rgb_to_gray(r, g, b):
    """BT.601 luma of [0, 1] channels: 0.299 r + 0.587 g + 0.114 b.

    Integer weights over 1000 keep the white point exact: (1, 1, 1) -> 1.0.
    Accepts scalars or arrays.
    """
    return (299.0 * r + 587.0 * g + 114.0 * b) / 1000.0


def load_image(path) -> np.ndarray:
    """Load a PGM or PNG file as a float64 image in [0, 1].

    RGB PNG input is converted with :func:`rgb_to_gray`. Raises
    :class:`ImageFormatError` for unsupported formats or bit depths and
    ``OSError`` for unreadable files.
    """
    path = os.fspath(path)
    with open(path, "rb") as fh:
        head = fh.read(8)
    if head[:2] in (b"P2", b"P5"):
        with open(path, "rb") as fh:
            return _parse_pgm(fh.read(), path)
    if head == b"\x89PNG\r\n\x1a\n":
        return _load_png(path)
    raise ImageFormatError(f"unsupported image format in {path!r} (expected PGM P2/P5 or PNG)")


def load_mask(path) -> np.ndarray:
    """Load a binary mask: any sample >= 128 maps to 1, others to 0."""
    return (load_image(path) >= _MASK_THRESHOLD).astype(np.uint8)


def save_image(img, path) -> None:
    """Write an image as 8-bit PGM (P5) or PNG, chosen by file extension.

    Intensities are quantized with round(v * 255); values built from 8-bit
    samples round-trip exactly.
    """
    arr = check_image(img)
    samples = np.rint(arr * 255.0).astype(np.uint8)
    _write_samples(samples, os.fspath(path))


def save_mask(mask, path) -> None:
    """Write a binary mask with bit 1 -> sample 255 and bit 0 -> sample 0.

    PGM P5 unless the extension is ``.png``. ``load_mask`` recovers the mask
    exactly.
    """
    arr = check_mask(mask)
    _write_samples(arr * np.uint8(255), os.fspath(path))


# ----------------------------------------------------------------------
# PGM codec (hand-rolled: exact control over header and sample handling)
# ----------------------------------------------------------------------

_WHITESPACE = b" \t\n\r\x0b\x0c"


def _pgm_tokens(data: bytes, pos: int, count: int, path: str) -> tuple[list[int], int]:
    """Read `count` ASCII integer tokens, skipping whitespace and # comments."""
    tokens: list[int] = []
    n = len(data)
    while len(tokens) < count:
        while pos < n and data[pos] in _WHITESPACE:
            pos += 1
        if pos < n and data[pos] == ord("#"):
            while pos < n and data[pos] not in b"\r\n":
                pos += 1
            continue
        start = pos
        while pos < n and data[pos] not in _WHITESPACE and data[pos] != ord("#"):
            pos += 1
        if pos == start:
            raise ImageFormatError(f"truncated PGM header in {path!r}")
        try:
            tokens.append(int(data[start:pos]))
        except ValueError:
            raise ImageFormatError(
                f"malformed PGM token {data[start:pos]!r} in {path!r}"
            ) from None
    return tokens, pos


def _parse_pgm(data: bytes, path: str) -> np.ndarray:
    magic = data[:2]
    (width, height, maxval), pos = _pgm_tokens(data, 2, 3, path)
    if width <= 0 or height <= 0:
        raise ImageFormatError(f"invalid PGM dimensions {width}x{height} in {path!r}")
    if maxval != 255:
        raise ImageFormatError(f"unsupported PGM maxval {maxval} in {path!r} (only 255)")
    count = width * height
    if magic == b"P5":
        pos += 1  # single whitespace byte after maxval
        raster = data[pos : pos + count]
        if len(raster) < count:
            raise ImageFormatError(f"truncated PGM raster in {path!r}")
        samples = np.frombuffer(raster, dtype=np.uint8, count=count)
    else:
        values, _ = _pgm_tokens(data, pos, count, path)
        if any(v < 0 or v > maxval for v in values):
            raise ImageFormatError(f"PGM sample out of range in {path!r}")
        samples = np.asarray(values, dtype=np.uint8)
    return samples.reshape(height, width).astype(np.float64) / 255.0


def _write_pgm(samples: np.ndarray, path: str) -> None:
    height, width = samples.shape
    header = f"P5\n{width} {height}\n255\n".encode("ascii")
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(samples.tobytes())


# ----------------------------------------------------------------------
# PNG via Pillow
# ----------------------------------------------------------------------


def _load_png(path: str) -> np.ndarray:
    with Image.open(path) as im:
        im.load()
        if im.mode == "L":
            return np.asarray(im, dtype=np.float64) / 255.0
        if im.mode == "RGB":
            rgb = np.asarray(im, dtype=np.float64) / 255.0
            return rgb_to_gray(rgb[..., 0], rgb[..., 1], rgb[..., 2])
        raise ImageFormatError(
            f"unsupported PNG mode {im.mode!r} in {path!r} (need 8-bit grayscale or RGB)"
        )


def _write_samples(samples: np.ndarray, path: str) -> None:
    if path.lower().endswith(".png"):
        Image.fromarray(samples, mode="L").save(path, format="PNG")
    else:
        _write_pgm(samples, path)
