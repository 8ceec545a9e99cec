"""Seeded synthetic ground truth and evaluation metrics.

The generator stamps solid dashes on a regular grid (optionally jittered),
returning the mask, per-dash truth records, and the unjittered grid model.
The corruptor models the failure modes the refiner has to survive: whole
dashes missing, dashes painted thin, and speckle noise. Everything is
deterministic for a given seed; random draws happen in a documented order
(one per dash for drops, then one per pixel, row-major, for noise).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ValidationError
from .gridfit import GridModel
from .reconstruct import DashRecord


@dataclass(frozen=True)
class SynthSpec:
    """Regular dash grid: canvas, tile size, grid origin/spacing/shape, jitter, seed."""

    width: int
    height: int
    tile_width: int
    tile_height: int
    row_start: int
    col_start: int
    row_spacing: int
    col_spacing: int
    n_rows: int
    n_cols: int
    jitter: int = 0
    seed: int = 0

    def __post_init__(self):
        if self.width < 1 or self.height < 1:
            raise ValidationError(f"canvas {self.width}x{self.height} must be at least 1x1")
        if self.tile_width < 1 or self.tile_height < 1:
            raise ValidationError(
                f"tile {self.tile_width}x{self.tile_height} must be at least 1x1"
            )
        if self.row_spacing <= 0 or self.col_spacing <= 0:
            raise ValidationError("row_spacing and col_spacing must be > 0")
        if self.n_rows < 1 or self.n_cols < 1:
            raise ValidationError("n_rows and n_cols must be >= 1")
        if self.jitter < 0:
            raise ValidationError(f"jitter must be >= 0, got {self.jitter}")
        last_x = self.col_start + (self.n_cols - 1) * self.col_spacing + self.tile_width
        last_y = self.row_start + (self.n_rows - 1) * self.row_spacing + self.tile_height
        if (
            self.col_start - self.jitter < 0
            or self.row_start - self.jitter < 0
            or last_x + self.jitter > self.width
            or last_y + self.jitter > self.height
        ):
            raise ValidationError(
                f"grid does not fit: dashes span x up to {last_x}, y up to {last_y} "
                f"with jitter {self.jitter} on a {self.width}x{self.height} canvas"
            )


@dataclass(frozen=True)
class CorruptionSpec:
    """Damage model: per-dash drop probability, edge erosion, background noise."""

    drop_prob: float = 0.0
    erode_px: int = 0
    noise_density: float = 0.0
    seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.drop_prob <= 1.0:
            raise ValidationError(f"drop_prob must be in [0, 1], got {self.drop_prob}")
        if not 0.0 <= self.noise_density <= 1.0:
            raise ValidationError(
                f"noise_density must be in [0, 1], got {self.noise_density}"
            )
        if self.erode_px < 0:
            raise ValidationError(f"erode_px must be >= 0, got {self.erode_px}")


def generate(spec: SynthSpec) -> tuple[np.ndarray, list[DashRecord], GridModel]:
    """Stamp the grid; returns (mask, truth records, unjittered grid model)."""
    rng = np.random.default_rng(spec.seed)
    mask = np.zeros((spec.height, spec.width), dtype=bool)
    records: list[DashRecord] = []
    for r in range(spec.n_rows):
        for c in range(spec.n_cols):
            x = spec.col_start + c * spec.col_spacing
            y = spec.row_start + r * spec.row_spacing
            if spec.jitter > 0:
                x += int(rng.integers(-spec.jitter, spec.jitter + 1))
                y += int(rng.integers(-spec.jitter, spec.jitter + 1))
            mask[y : y + spec.tile_height, x : x + spec.tile_width] = True
            records.append(
                DashRecord(len(records), x, y, spec.tile_width, spec.tile_height)
            )
    grid = GridModel(
        row_positions=tuple(
            float(spec.row_start + r * spec.row_spacing) for r in range(spec.n_rows)
        ),
        col_positions=tuple(
            float(spec.col_start + c * spec.col_spacing) for c in range(spec.n_cols)
        ),
        avg_col_spacing=float(spec.col_spacing),
        tile_width=spec.tile_width,
        tile_height=spec.tile_height,
    )
    return mask, records, grid


def erode(mask: np.ndarray, radius: int) -> np.ndarray:
    """Square-neighborhood erosion; pixels outside the image count as background."""
    if radius < 0:
        raise ValidationError(f"erosion radius must be >= 0, got {radius}")
    if radius == 0:
        return mask.copy()
    h, w = mask.shape
    out = mask.copy()
    for dy in range(-radius, radius + 1):
        for dx in range(-radius, radius + 1):
            shifted = np.zeros((h, w), dtype=bool)
            ys0, ys1 = max(0, -dy), min(h, h - dy)
            xs0, xs1 = max(0, -dx), min(w, w - dx)
            shifted[ys0:ys1, xs0:xs1] = mask[ys0 + dy : ys1 + dy, xs0 + dx : xs1 + dx]
            out &= shifted
    return out


def corrupt(mask: np.ndarray, truth: list[DashRecord], cspec: CorruptionSpec) -> np.ndarray:
    """Drop whole dashes, erode the survivors, then salt the background."""
    if truth:
        min_dim = min(min(r.width, r.height) for r in truth)
        if cspec.erode_px and cspec.erode_px >= min_dim / 2:
            raise ValidationError(
                f"erode_px {cspec.erode_px} must be below half the smallest "
                f"dash dimension ({min_dim})"
            )
    rng = np.random.default_rng(cspec.seed)
    out = mask.copy()
    if truth:
        drops = rng.random(len(truth)) < cspec.drop_prob
        for rec, dropped in zip(truth, drops):
            if dropped:
                out[rec.y : rec.y + rec.height, rec.x : rec.x + rec.width] = False
    if cspec.erode_px:
        out = erode(out, cspec.erode_px)
    if cspec.noise_density > 0:
        salt = rng.random(out.shape) < cspec.noise_density
        out |= salt
    return out


def detection_metrics(
    predicted: list[DashRecord], truth: list[DashRecord], tolerance: float
) -> tuple[float, float, float]:
    """Greedy origin matching within `tolerance`; returns (precision, recall, rmse).

    Candidate pairs are taken closest-first (ties favor the smaller
    predicted id, then the smaller truth id); each record matches at most
    once. Empty predicted gives precision 1.0 by convention, empty truth
    gives recall 1.0, and rmse is 0.0 when nothing matched.
    """
    if not tolerance > 0:
        raise ValidationError(f"tolerance must be > 0, got {tolerance}")
    pairs = []
    for pi, p in enumerate(predicted):
        for ti, t in enumerate(truth):
            d = math.hypot(p.x - t.x, p.y - t.y)
            if d <= tolerance:
                pairs.append((d, pi, ti))
    pairs.sort()
    used_pred: set[int] = set()
    used_truth: set[int] = set()
    matched_d2 = []
    for d, pi, ti in pairs:
        if pi in used_pred or ti in used_truth:
            continue
        used_pred.add(pi)
        used_truth.add(ti)
        matched_d2.append(d * d)
    matched = len(matched_d2)
    precision = matched / len(predicted) if predicted else 1.0
    recall = matched / len(truth) if truth else 1.0
    rmse = math.sqrt(sum(matched_d2) / matched) if matched else 0.0
    return precision, recall, rmse


def pixel_iou(a: np.ndarray, b: np.ndarray) -> float:
    """Intersection over union of two masks; 1.0 when both are empty."""
    a = np.asarray(a, dtype=bool)
    b = np.asarray(b, dtype=bool)
    if a.shape != b.shape:
        raise ValidationError(f"mask shapes differ: {a.shape} vs {b.shape}")
    union = int(np.count_nonzero(a | b))
    if union == 0:
        return 1.0
    return int(np.count_nonzero(a & b)) / union
