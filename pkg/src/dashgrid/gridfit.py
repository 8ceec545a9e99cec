"""Collapse raw scan hits into a row/column grid model.

The scan returns a cloud of hits around every dash. Rows are recovered by
single-linkage clustering of the distinct hit y values; columns get the
same treatment, except their clustering threshold is relative: a fraction
of the average distance between adjacent distinct columns within each row.
Cluster positions are the arithmetic means of the distinct coordinates and
stay fractional; rounding happens only when the tile is stamped.
"""
from __future__ import annotations

from dataclasses import dataclass

from .errors import InsufficientColumnsError, NoHitsError, ValidationError
from .scan import MatchHit, ReferenceTile


@dataclass(frozen=True)
class FitConfig:
    """Clustering parameters: absolute pixels for rows, a spacing fraction for columns."""

    row_dist_threshold: float
    col_dist_factor: float

    def __post_init__(self):
        if not self.row_dist_threshold > 0:
            raise ValidationError(
                f"row_dist_threshold must be > 0, got {self.row_dist_threshold}"
            )
        if not self.col_dist_factor > 0:
            raise ValidationError(
                f"col_dist_factor must be > 0, got {self.col_dist_factor}"
            )


@dataclass(frozen=True)
class GridModel:
    """Refined dash layout: row/column positions plus the tile geometry used."""

    row_positions: tuple[float, ...]
    col_positions: tuple[float, ...]
    avg_col_spacing: float
    tile_width: int
    tile_height: int

    def __post_init__(self):
        for name, seq in (("row_positions", self.row_positions), ("col_positions", self.col_positions)):
            if any(b <= a for a, b in zip(seq, seq[1:])):
                raise ValidationError(f"{name} must be strictly ascending, got {seq}")
        if len(self.col_positions) >= 2 and not self.avg_col_spacing > 0:
            raise ValidationError(
                f"avg_col_spacing must be > 0, got {self.avg_col_spacing}"
            )

    def to_json_dict(self) -> dict:
        return {
            "row_positions": list(self.row_positions),
            "col_positions": list(self.col_positions),
            "avg_col_spacing": self.avg_col_spacing,
            "tile_width": self.tile_width,
            "tile_height": self.tile_height,
        }

    @classmethod
    def from_json_dict(cls, doc: dict) -> "GridModel":
        try:
            return cls(
                row_positions=tuple(float(v) for v in doc["row_positions"]),
                col_positions=tuple(float(v) for v in doc["col_positions"]),
                avg_col_spacing=float(doc["avg_col_spacing"]),
                tile_width=int(doc["tile_width"]),
                tile_height=int(doc["tile_height"]),
            )
        except (KeyError, TypeError) as exc:
            raise ValidationError(f"malformed grid document: {exc}") from None


def cluster_1d(values, gap_threshold: float) -> list[float]:
    """Single-linkage clustering of coordinates; returns cluster means, ascending.

    Duplicates are collapsed first, so means are means of distinct
    positions. Sorted neighbors chain into one cluster while their gap is
    smaller than the threshold; a gap >= threshold starts a new cluster.
    Empty input is an empty result.
    """
    if not gap_threshold > 0:
        raise ValidationError(f"gap threshold must be > 0, got {gap_threshold}")
    distinct = sorted({float(v) for v in values})
    if not distinct:
        return []
    means: list[float] = []
    start = 0
    for i in range(1, len(distinct) + 1):
        if i == len(distinct) or distinct[i] - distinct[i - 1] >= gap_threshold:
            group = distinct[start:i]
            means.append(sum(group) / len(group))
            start = i
    return means


def cluster_rows(hits: list[MatchHit], cfg: FitConfig) -> list[float]:
    """Refined row positions from the distinct hit y values."""
    return cluster_1d({h.y for h in hits}, cfg.row_dist_threshold)


def _nearest_row_index(y: float, row_positions) -> int:
    # ties go to the smaller row index
    best = 0
    best_dist = abs(y - row_positions[0])
    for i in range(1, len(row_positions)):
        d = abs(y - row_positions[i])
        if d < best_dist:
            best, best_dist = i, d
    return best


def column_stats(hits: list[MatchHit], row_positions, cfg: FitConfig) -> tuple[float, list[float]]:
    """Average adjacent-column distance pooled over all rows, plus all unique columns.

    Each hit is assigned to its nearest refined row; within a row the
    distinct x values are sorted and adjacent differences collected. The
    average is the flat mean of every collected difference. Raises
    InsufficientColumnsError when no row has two distinct columns.
    """
    per_row: dict[int, set[float]] = {}
    for h in hits:
        if not row_positions:
            break
        idx = _nearest_row_index(h.y, row_positions)
        per_row.setdefault(idx, set()).add(float(h.x))

    diffs: list[float] = []
    for xs in per_row.values():
        ordered = sorted(xs)
        diffs.extend(b - a for a, b in zip(ordered, ordered[1:]))
    if not diffs:
        raise InsufficientColumnsError(
            "insufficient columns: no row has two distinct column positions"
        )
    unique_cols = sorted({float(h.x) for h in hits})
    return sum(diffs) / len(diffs), unique_cols


def cluster_cols(unique_cols, avg_col_spacing: float, cfg: FitConfig) -> list[float]:
    """Cluster column positions with threshold = avg_col_spacing * col_dist_factor."""
    if not avg_col_spacing > 0:
        raise ValidationError(f"avg_col_spacing must be > 0, got {avg_col_spacing}")
    return cluster_1d(unique_cols, avg_col_spacing * cfg.col_dist_factor)


def fit_grid(hits: list[MatchHit], tile: ReferenceTile, cfg: FitConfig) -> GridModel:
    """Rows, then column statistics, then columns; carries the tile geometry along."""
    if not hits:
        raise NoHitsError("no hits: nothing to fit")
    rows = cluster_rows(hits, cfg)
    avg_spacing, unique_cols = column_stats(hits, rows, cfg)
    cols = cluster_cols(unique_cols, avg_spacing, cfg)
    return GridModel(
        row_positions=tuple(rows),
        col_positions=tuple(cols),
        avg_col_spacing=avg_spacing,
        tile_width=tile.width,
        tile_height=tile.height,
    )
