"""Moving-window overlap scan.

Slides a window the size of the reference tile over the mask at stride 1,
row-major, and records every window whose overlap fraction strictly exceeds
the threshold. The overlap fraction is the share of the tile's foreground
pixels that land on mask foreground, so a well-formed dash scores 1.0 no
matter how much other paint is nearby.

Two interchangeable backends compute the per-window counts: a compiled
kernel (dashgrid._kernels, built from Cython) and a numpy fallback. The
backend is picked at import time; both produce identical hits in identical
order. Set DASHGRID_FORCE_NUMPY=1 to skip the compiled kernel.
"""
from __future__ import annotations

import os
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .raster import as_mask

try:
    if os.environ.get("DASHGRID_FORCE_NUMPY"):
        _kernels = None
    else:
        from . import _kernels  # type: ignore[attr-defined]
except ImportError:
    _kernels = None

ACTIVE_BACKEND = "compiled" if _kernels is not None else "numpy"


class ReferenceTile:
    """Binary template of one well-formed dash; also the reconstruction stamp.

    Caches the foreground count and the foreground coordinates used by the
    scan kernels. An all-background tile is invalid.
    """

    def __init__(self, mask):
        mask = np.ascontiguousarray(as_mask(mask))
        self.mask = mask
        self.mask.flags.writeable = False
        self.on_count = int(np.count_nonzero(mask))
        if self.on_count < 1:
            raise ValidationError("reference tile must contain at least one foreground pixel")
        ys, xs = np.nonzero(mask)
        self._fg_ys = np.ascontiguousarray(ys, dtype=np.intp)
        self._fg_xs = np.ascontiguousarray(xs, dtype=np.intp)

    @property
    def height(self) -> int:
        return self.mask.shape[0]

    @property
    def width(self) -> int:
        return self.mask.shape[1]

    def __repr__(self):
        return f"ReferenceTile({self.width}x{self.height}, on={self.on_count})"


@dataclass(frozen=True)
class MatchHit:
    """One accepted window: top-left corner (x = column, y = row) and its overlap."""

    x: int
    y: int
    overlap: float


def overlap_fraction(mask: np.ndarray, origin: tuple[int, int], tile: ReferenceTile) -> float:
    """Overlap of the window at `origin` with the tile, in [0, 1]."""
    mask = as_mask(mask)
    x, y = int(origin[0]), int(origin[1])
    h, w = mask.shape
    if x < 0 or y < 0 or x + tile.width > w or y + tile.height > h:
        raise ValidationError(
            f"window at ({x}, {y}) size {tile.width}x{tile.height} "
            f"is outside the {w}x{h} mask"
        )
    window = mask[y : y + tile.height, x : x + tile.width]
    matched = int(np.count_nonzero(window & tile.mask))
    return matched / tile.on_count


def _check_scan_args(mask: np.ndarray, tile: ReferenceTile, threshold: float) -> np.ndarray:
    mask = as_mask(mask)
    h, w = mask.shape
    if tile.height > h or tile.width > w:
        raise ValidationError(
            f"tile {tile.width}x{tile.height} does not fit in mask {w}x{h}"
        )
    if not 0.0 <= float(threshold) <= 1.0:
        raise ValidationError(f"overlap threshold {threshold} must be in [0, 1]")
    return mask


def _scan_numpy(mask: np.ndarray, tile: ReferenceTile, threshold: float):
    """Fallback backend: shift-and-accumulate window counts, then select."""
    out_h = mask.shape[0] - tile.height + 1
    out_w = mask.shape[1] - tile.width + 1
    counts = np.zeros((out_h, out_w), dtype=np.int64)
    for ty, tx in zip(tile._fg_ys, tile._fg_xs):
        counts += mask[ty : ty + out_h, tx : tx + out_w]
    selected = counts / float(tile.on_count) > threshold
    ys, xs = np.nonzero(selected)  # row-major: y outer, x inner
    return ys, xs, counts[ys, xs]


def _scan_compiled(mask: np.ndarray, tile: ReferenceTile, threshold: float):
    """Compiled backend; emits the same hits in the same order as the fallback."""
    mask_u8 = np.ascontiguousarray(mask, dtype=np.uint8)
    return _kernels.scan_hits(
        mask_u8,
        tile.height,
        tile.width,
        tile._fg_ys,
        tile._fg_xs,
        float(threshold),
        tile.on_count,
    )


def scan_locations(mask: np.ndarray, tile: ReferenceTile, threshold: float) -> list[MatchHit]:
    """Exhaustive stride-1 scan; hits where overlap > threshold, in visit order.

    Visit order is row-major: y ascending outer, x ascending inner. There is
    no deduplication here; a clean dash yields a cloud of surrounding hits
    that the grid-fitting step collapses.
    """
    mask = _check_scan_args(mask, tile, threshold)
    backend = _scan_compiled if _kernels is not None else _scan_numpy
    ys, xs, counts = backend(mask, tile, threshold)
    on = tile.on_count
    return [
        MatchHit(int(x), int(y), int(c) / on)
        for y, x, c in zip(ys, xs, counts)
    ]


def hits_to_json_dict(hits: list[MatchHit]) -> dict:
    return {"hits": [{"x": h.x, "y": h.y, "overlap": h.overlap} for h in hits]}


def hits_from_json_dict(doc: dict) -> list[MatchHit]:
    try:
        return [
            MatchHit(int(h["x"]), int(h["y"]), float(h["overlap"]))
            for h in doc["hits"]
        ]
    except (KeyError, TypeError) as exc:
        raise ValidationError(f"malformed hit list document: {exc}") from None
