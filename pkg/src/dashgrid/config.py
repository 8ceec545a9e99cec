"""JSON configuration for the end-to-end refine pipeline.

A single config file keeps the three coupled thresholds reproducible. The
overlap threshold defaults to 0.6; the row distance threshold and column
distance factor are data-dependent and deliberately have no default, so a
config that omits them is rejected. Relative paths are resolved against
the directory containing the config file.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from pathlib import Path

from .errors import FormatError, ValidationError
from .raster import RectRegion
from .synth import CorruptionSpec, SynthSpec

EXPORT_FORMATS = ("csv", "json", "dxf", "pgm")
DEFAULT_OVERLAP_THRESHOLD = 0.6


@dataclass
class PipelineConfig:
    input_mask_path: Path
    tile_path: Path
    output_dir: Path
    row_dist_threshold: float
    col_dist_factor: float
    overlap_threshold: float = DEFAULT_OVERLAP_THRESHOLD
    rotation_degrees: float = 0.0
    crop: RectRegion | None = None
    binarize_threshold: int = 128
    overlay_mode: bool = False
    export_formats: tuple[str, ...] = field(default=EXPORT_FORMATS)

    def validate(self) -> None:
        if not 0.0 <= self.overlap_threshold <= 1.0:
            raise ValidationError(
                f"overlap_threshold must be in [0, 1], got {self.overlap_threshold}"
            )
        if not self.row_dist_threshold > 0:
            raise ValidationError(
                f"row_dist_threshold must be > 0, got {self.row_dist_threshold}"
            )
        if not self.col_dist_factor > 0:
            raise ValidationError(
                f"col_dist_factor must be > 0, got {self.col_dist_factor}"
            )
        if not 0 <= self.binarize_threshold <= 255:
            raise ValidationError(
                f"binarize_threshold must be in 0..255, got {self.binarize_threshold}"
            )
        for fmt in self.export_formats:
            if fmt not in EXPORT_FORMATS:
                raise ValidationError(
                    f"export_formats entry {fmt!r} is not one of {EXPORT_FORMATS}"
                )


def _load_json(path: Path) -> dict:
    try:
        doc = json.loads(path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"{path}: invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise FormatError(f"{path}: expected a JSON object at the top level")
    return doc


def _take(doc: dict, key: str, kind, required: bool = False, default=None):
    if key not in doc:
        if required:
            raise ValidationError(f"{key} is required and missing from the config")
        return default
    value = doc.pop(key)
    try:
        return kind(value)
    except (TypeError, ValueError):
        raise ValidationError(f"{key} has invalid value {value!r}") from None


def _reject_unknown(doc: dict, where: str) -> None:
    if doc:
        raise ValidationError(f"unknown {where} field(s): {', '.join(sorted(doc))}")


def load_pipeline_config(path: str | Path) -> PipelineConfig:
    path = Path(path)
    doc = _load_json(path)
    base = path.parent

    crop_doc = doc.pop("crop", None)
    crop = None
    if crop_doc is not None:
        if not isinstance(crop_doc, dict):
            raise ValidationError(f"crop must be an object, got {crop_doc!r}")
        try:
            crop = RectRegion(
                x0=_take(crop_doc, "x0", int, required=True),
                y0=_take(crop_doc, "y0", int, required=True),
                width=_take(crop_doc, "width", int, required=True),
                height=_take(crop_doc, "height", int, required=True),
            )
        except ValidationError as exc:
            raise ValidationError(f"crop: {exc}") from None
        _reject_unknown(crop_doc, "crop")

    formats = doc.pop("export_formats", list(EXPORT_FORMATS))
    if not isinstance(formats, list) or not all(isinstance(f, str) for f in formats):
        raise ValidationError(f"export_formats must be a list of strings, got {formats!r}")

    cfg = PipelineConfig(
        input_mask_path=base / _take(doc, "input_mask_path", str, required=True),
        tile_path=base / _take(doc, "tile_path", str, required=True),
        output_dir=base / _take(doc, "output_dir", str, required=True),
        row_dist_threshold=_take(doc, "row_dist_threshold", float, required=True),
        col_dist_factor=_take(doc, "col_dist_factor", float, required=True),
        overlap_threshold=_take(
            doc, "overlap_threshold", float, default=DEFAULT_OVERLAP_THRESHOLD
        ),
        rotation_degrees=_take(doc, "rotation_degrees", float, default=0.0),
        crop=crop,
        binarize_threshold=_take(doc, "binarize_threshold", int, default=128),
        overlay_mode=_take(doc, "overlay_mode", bool, default=False),
        export_formats=tuple(formats),
    )
    _reject_unknown(doc, "config")
    cfg.validate()
    return cfg


_SYNTH_KEYS = {
    "width": int,
    "height": int,
    "tile_width": int,
    "tile_height": int,
    "row_start": int,
    "col_start": int,
    "row_spacing": int,
    "col_spacing": int,
    "n_rows": int,
    "n_cols": int,
}


def load_synth_spec(path: str | Path) -> SynthSpec:
    doc = _load_json(Path(path))
    kwargs = {key: _take(doc, key, kind, required=True) for key, kind in _SYNTH_KEYS.items()}
    kwargs["jitter"] = _take(doc, "jitter", int, default=0)
    kwargs["seed"] = _take(doc, "seed", int, default=0)
    _reject_unknown(doc, "synth spec")
    return SynthSpec(**kwargs)


def load_corruption_spec(path: str | Path) -> CorruptionSpec:
    doc = _load_json(Path(path))
    cspec = CorruptionSpec(
        drop_prob=_take(doc, "drop_prob", float, default=0.0),
        erode_px=_take(doc, "erode_px", int, default=0),
        noise_density=_take(doc, "noise_density", float, default=0.0),
        seed=_take(doc, "seed", int, default=0),
    )
    _reject_unknown(doc, "corruption spec")
    return cspec
