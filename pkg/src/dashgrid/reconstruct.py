"""Stamp the reference tile at every grid cell and export dash coordinates.

Reconstruction starts from a blank canvas: for each refined row (ascending)
and each refined column (ascending) the tile is OR-ed on at the rounded
position, and one DashRecord is emitted per stamp. Exports cover CSV, JSON
and a minimal entities-only DXF whose y axis is flipped, since raster
origin is top-left while CAD origin is bottom-left.
"""
from __future__ import annotations

import json
import math
from dataclasses import asdict, dataclass

import numpy as np

from .errors import FormatError, ValidationError
from .gridfit import GridModel
from .raster import as_mask
from .scan import ReferenceTile

CSV_HEADER = "id,x,y,width,height"


@dataclass(frozen=True)
class DashRecord:
    """One reconstructed dash: stamped top-left corner plus the tile size."""

    id: int
    x: int
    y: int
    width: int
    height: int


def _round_half_up(v: float) -> int:
    return math.floor(v + 0.5)


def stamp_tile(canvas: np.ndarray, tile: ReferenceTile, origin: tuple[int, int]) -> np.ndarray:
    """OR the tile's foreground onto a copy of the canvas; out-of-bounds parts clip."""
    canvas = as_mask(canvas)
    out = canvas.copy()
    x, y = int(origin[0]), int(origin[1])
    h, w = out.shape
    src_x0 = max(0, -x)
    src_y0 = max(0, -y)
    src_x1 = min(tile.width, w - x)
    src_y1 = min(tile.height, h - y)
    if src_x0 < src_x1 and src_y0 < src_y1:
        out[y + src_y0 : y + src_y1, x + src_x0 : x + src_x1] |= tile.mask[
            src_y0:src_y1, src_x0:src_x1
        ]
    return out


def reconstruct_mask(
    grid: GridModel, tile: ReferenceTile, width: int, height: int
) -> tuple[np.ndarray, list[DashRecord]]:
    """Blank canvas stamped at every (row, column) cell, with one record per stamp.

    Records are numbered 0..n-1 in row-major grid order. Fractional grid
    positions round half-up at stamping time.
    """
    if width < tile.width or height < tile.height:
        raise ValidationError(
            f"canvas {width}x{height} is smaller than the tile {tile.width}x{tile.height}"
        )
    mask = np.zeros((height, width), dtype=bool)
    records: list[DashRecord] = []
    for r in grid.row_positions:
        y = _round_half_up(r)
        for c in grid.col_positions:
            x = _round_half_up(c)
            src_x0 = max(0, -x)
            src_y0 = max(0, -y)
            src_x1 = min(tile.width, width - x)
            src_y1 = min(tile.height, height - y)
            if src_x0 < src_x1 and src_y0 < src_y1:
                mask[y + src_y0 : y + src_y1, x + src_x0 : x + src_x1] |= tile.mask[
                    src_y0:src_y1, src_x0:src_x1
                ]
            records.append(
                DashRecord(len(records), x, y, tile.width, tile.height)
            )
    return mask, records


def export_csv(records: list[DashRecord]) -> bytes:
    """UTF-8 CSV with header id,x,y,width,height, one row per record, LF endings."""
    lines = [CSV_HEADER]
    lines.extend(f"{r.id},{r.x},{r.y},{r.width},{r.height}" for r in records)
    return ("\n".join(lines) + "\n").encode("utf-8")


def read_csv_records(data: bytes) -> list[DashRecord]:
    """Parse bytes produced by export_csv back into records."""
    text = data.decode("utf-8")
    lines = [line for line in text.split("\n") if line]
    if not lines or lines[0] != CSV_HEADER:
        raise FormatError(f"malformed dash CSV: expected header {CSV_HEADER!r}")
    records = []
    for lineno, line in enumerate(lines[1:], start=2):
        parts = line.split(",")
        if len(parts) != 5:
            raise FormatError(f"malformed dash CSV: line {lineno} has {len(parts)} fields")
        try:
            records.append(DashRecord(*(int(p) for p in parts)))
        except ValueError:
            raise FormatError(f"malformed dash CSV: non-integer field on line {lineno}") from None
    return records


def export_json(records: list[DashRecord]) -> bytes:
    """JSON array mirroring the DashRecord fields."""
    return (json.dumps([asdict(r) for r in records], indent=2) + "\n").encode("utf-8")


def _dxf_pairs(records: list[DashRecord], image_height: int):
    yield "0", "SECTION"
    yield "2", "ENTITIES"
    for r in records:
        top = float(image_height - r.y)
        bottom = float(image_height - r.y - r.height)
        left = float(r.x)
        right = float(r.x + r.width)
        yield "0", "LWPOLYLINE"
        yield "90", "4"
        yield "70", "1"  # closed polyline
        for vx, vy in ((left, top), (right, top), (right, bottom), (left, bottom)):
            yield "10", repr(vx)
            yield "20", repr(vy)
    yield "0", "ENDSEC"
    yield "0", "EOF"


def export_dxf(records: list[DashRecord], image_height: int) -> bytes:
    """Entities-only ASCII DXF: one closed rectangle per dash, y axis flipped."""
    lines = []
    for code, value in _dxf_pairs(records, image_height):
        lines.append(code)
        lines.append(value)
    return ("\n".join(lines) + "\n").encode("ascii")
