"""Image representation and geometric preprocessing.

Grayscale images are (height, width) uint8 arrays; binary masks are
(height, width) bool arrays with True = foreground. x indexes columns,
y indexes rows, origin at the top-left. All operations are pure: inputs
are never mutated and results are freshly allocated.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import pgm, png
from .errors import FormatError, ValidationError


@dataclass(frozen=True)
class RectRegion:
    """Axis-aligned crop window, (x0, y0) is its top-left corner."""

    x0: int
    y0: int
    width: int
    height: int

    def __post_init__(self):
        if self.x0 < 0 or self.y0 < 0:
            raise ValidationError(f"crop origin ({self.x0}, {self.y0}) must be non-negative")
        if self.width < 1 or self.height < 1:
            raise ValidationError(f"crop size {self.width}x{self.height} must be at least 1x1")


def as_mask(array) -> np.ndarray:
    """Coerce to a 2D boolean mask, validating the shape."""
    mask = np.asarray(array, dtype=bool)
    if mask.ndim != 2 or mask.shape[0] < 1 or mask.shape[1] < 1:
        raise ValidationError(f"mask must be 2D and non-empty, got shape {mask.shape}")
    return mask


def load_image(data: bytes) -> np.ndarray:
    """Decode PGM (P2/P5) or PNG bytes into a grayscale uint8 array."""
    if data.startswith(png.SIGNATURE):
        return png.load_png(data)
    if data[:1] == b"P":
        return pgm.load_pgm(data)
    raise FormatError("unrecognized image format: expected PGM (P2/P5) or PNG")


def binarize(image: np.ndarray, threshold: int) -> np.ndarray:
    """Foreground where luminance >= threshold; dimensions preserved."""
    if not 0 <= int(threshold) <= 255:
        raise ValidationError(f"binarize threshold {threshold} must be in 0..255")
    image = np.asarray(image)
    return image >= threshold


def crop(mask: np.ndarray, region: RectRegion) -> np.ndarray:
    """Extract the region; pixel (x, y) of the result is (x0+x, y0+y) of the input."""
    mask = as_mask(mask)
    h, w = mask.shape
    if region.x0 + region.width > w or region.y0 + region.height > h:
        raise ValidationError(
            f"crop region {region} exceeds image bounds {w}x{h}"
        )
    return mask[region.y0 : region.y0 + region.height, region.x0 : region.x0 + region.width].copy()


def rotate(mask: np.ndarray, degrees: float) -> np.ndarray:
    """Rotate counterclockwise about the image center, keeping the canvas size.

    Destination pixels sample the source by nearest neighbor through the
    inverse mapping; anything that maps outside the source becomes
    background. Exact multiples of 90 degrees go through an exact integer
    coordinate permutation, so repeated quarter turns lose nothing on
    square masks.
    """
    degrees = float(degrees)
    if not math.isfinite(degrees):
        raise ValidationError(f"rotation angle must be finite, got {degrees}")
    mask = as_mask(mask)
    h, w = mask.shape

    yy, xx = np.indices((h, w))
    if degrees % 90.0 == 0.0:
        k = int(round(degrees / 90.0)) % 4
        if k == 0:
            return mask.copy()
        # doubled offsets keep half-pixel centers on integers
        u = 2 * xx - (w - 1)
        v = 2 * yy - (h - 1)
        if k == 1:
            su, sv = -v, u
        elif k == 2:
            su, sv = -u, -v
        else:
            su, sv = v, -u
        sx = (su + w) // 2  # floor((source + 0.5)) in doubled coordinates
        sy = (sv + h) // 2
    else:
        a = math.radians(degrees)
        cos_a, sin_a = math.cos(a), math.sin(a)
        cx, cy = (w - 1) / 2.0, (h - 1) / 2.0
        dx = xx - cx
        dy = yy - cy
        sx = np.floor(cx + cos_a * dx - sin_a * dy + 0.5).astype(np.int64)
        sy = np.floor(cy + sin_a * dx + cos_a * dy + 0.5).astype(np.int64)

    valid = (sx >= 0) & (sx < w) & (sy >= 0) & (sy < h)
    out = np.zeros((h, w), dtype=bool)
    out[valid] = mask[sy[valid], sx[valid]]
    return out
