"""Dash-line mask refinement: scan, grid fit, reconstruct, export.

The pipeline takes a binary segmentation mask of dashed lane markings,
locates every dash by moving-window overlap against a reference tile,
fits a row/column grid to the hit cloud, stamps the tile back at every
grid cell (repairing broken or missing dashes), and exports per-dash
coordinates for CAD use.
"""

from .errors import (
    DashGridError,
    FormatError,
    InsufficientColumnsError,
    NoHitsError,
    ProcessingError,
    ValidationError,
)
from .gridfit import (
    FitConfig,
    GridModel,
    cluster_1d,
    cluster_cols,
    cluster_rows,
    column_stats,
    fit_grid,
)
from .pgm import load_pgm, save_pgm
from .png import load_png
from .raster import RectRegion, binarize, crop, load_image, rotate
from .reconstruct import (
    DashRecord,
    export_csv,
    export_dxf,
    export_json,
    read_csv_records,
    reconstruct_mask,
    stamp_tile,
)
from .scan import (
    ACTIVE_BACKEND,
    MatchHit,
    ReferenceTile,
    overlap_fraction,
    scan_locations,
)
from .synth import (
    CorruptionSpec,
    SynthSpec,
    corrupt,
    detection_metrics,
    erode,
    generate,
    pixel_iou,
)

__version__ = "0.1.0"

__all__ = [
    "ACTIVE_BACKEND",
    "CorruptionSpec",
    "DashGridError",
    "DashRecord",
    "FitConfig",
    "FormatError",
    "GridModel",
    "InsufficientColumnsError",
    "MatchHit",
    "NoHitsError",
    "ProcessingError",
    "RectRegion",
    "ReferenceTile",
    "SynthSpec",
    "ValidationError",
    "binarize",
    "cluster_1d",
    "cluster_cols",
    "cluster_rows",
    "column_stats",
    "corrupt",
    "crop",
    "detection_metrics",
    "erode",
    "export_csv",
    "export_dxf",
    "export_json",
    "fit_grid",
    "generate",
    "load_image",
    "load_pgm",
    "load_png",
    "overlap_fraction",
    "pixel_iou",
    "read_csv_records",
    "reconstruct_mask",
    "rotate",
    "save_pgm",
    "scan_locations",
    "stamp_tile",
]
