"""Command line interface.

`refine` runs the whole pipeline from a JSON config; `synth` and `eval`
generate benchmark data and score results against it. The remaining
subcommands expose the individual stages for debugging, each reading and
writing the same artifact formats the pipeline uses.

Exit codes: 0 success, 2 validation error, 3 processing error, 4 I/O error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import scan as scan_mod
from .config import (
    DEFAULT_OVERLAP_THRESHOLD,
    PipelineConfig,
    load_corruption_spec,
    load_pipeline_config,
    load_synth_spec,
)
from .errors import FormatError, ProcessingError, ValidationError
from .gridfit import FitConfig, GridModel, fit_grid
from .pgm import save_pgm
from .raster import RectRegion, binarize, crop, load_image, rotate
from .reconstruct import (
    export_csv,
    export_dxf,
    export_json,
    read_csv_records,
    reconstruct_mask,
)
from .scan import ReferenceTile, hits_from_json_dict, hits_to_json_dict, scan_locations
from .synth import CorruptionSpec, corrupt, detection_metrics, generate, pixel_iou

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_PROCESSING = 3
EXIT_IO = 4


def _read_bytes(path: Path) -> bytes:
    return Path(path).read_bytes()


def _load_mask(path: Path, threshold: int = 128) -> np.ndarray:
    return binarize(load_image(_read_bytes(path)), threshold)


def _load_tile(path: Path) -> ReferenceTile:
    # tiles are binary artifacts; 128 matches the save_pgm round trip
    return ReferenceTile(_load_mask(path, 128))


def _json_bytes(doc) -> bytes:
    return (json.dumps(doc, indent=2) + "\n").encode("utf-8")


def _write_artifacts(output_dir: Path, artifacts: dict[str, bytes]) -> None:
    """Two-phase write: stage every file under a temp name, then rename all."""
    output_dir.mkdir(parents=True, exist_ok=True)
    staged = []
    try:
        for name, payload in artifacts.items():
            tmp = output_dir / f".tmp.{name}"
            tmp.write_bytes(payload)
            staged.append((tmp, output_dir / name))
        for tmp, final in staged:
            os.replace(tmp, final)
    finally:
        for tmp, _ in staged:
            tmp.unlink(missing_ok=True)


# ---------------------------------------------------------------- refine


def run_refine(cfg: PipelineConfig) -> tuple[dict[str, bytes], str]:
    """Execute the pipeline; returns (artifact payloads, summary line).

    Pure compute: nothing is written here, so a failure anywhere leaves no
    artifacts behind.
    """
    cfg.validate()
    mask = _load_mask(cfg.input_mask_path, cfg.binarize_threshold)
    tile = _load_tile(cfg.tile_path)
    if cfg.rotation_degrees != 0.0:
        mask = rotate(mask, cfg.rotation_degrees)
    if cfg.crop is not None:
        mask = crop(mask, cfg.crop)

    hits = scan_locations(mask, tile, cfg.overlap_threshold)
    grid = fit_grid(hits, tile, FitConfig(cfg.row_dist_threshold, cfg.col_dist_factor))
    height, width = mask.shape
    refined, records = reconstruct_mask(grid, tile, width, height)
    if cfg.overlay_mode:
        refined = refined | mask

    artifacts = {
        "refined.pgm": save_pgm(refined),
        "grid.json": _json_bytes(grid.to_json_dict()),
        "hits.json": _json_bytes(hits_to_json_dict(hits)),
    }
    if "csv" in cfg.export_formats:
        artifacts["dashes.csv"] = export_csv(records)
    if "json" in cfg.export_formats:
        artifacts["dashes.json"] = export_json(records)
    if "dxf" in cfg.export_formats:
        artifacts["dashes.dxf"] = export_dxf(records, height)

    summary = (
        f"hits={len(hits)} rows={len(grid.row_positions)} "
        f"cols={len(grid.col_positions)} dashes={len(records)}"
    )
    return artifacts, summary


def _cmd_refine(args) -> int:
    cfg = load_pipeline_config(args.config)
    if args.output_dir is not None:
        cfg.output_dir = Path(args.output_dir)
    if args.overlap_threshold is not None:
        cfg.overlap_threshold = args.overlap_threshold
    if args.row_dist_threshold is not None:
        cfg.row_dist_threshold = args.row_dist_threshold
    if args.col_dist_factor is not None:
        cfg.col_dist_factor = args.col_dist_factor
    artifacts, summary = run_refine(cfg)
    _write_artifacts(Path(cfg.output_dir), artifacts)
    print(summary)
    return EXIT_OK


# ----------------------------------------------------------------- synth


def _cmd_synth(args) -> int:
    spec = load_synth_spec(args.spec)
    cspec = load_corruption_spec(args.corrupt) if args.corrupt else CorruptionSpec()
    mask, records, grid = generate(spec)
    corrupted = corrupt(mask, records, cspec)
    artifacts = {
        "truth.pgm": save_pgm(mask),
        "corrupted.pgm": save_pgm(corrupted),
        "truth.csv": export_csv(records),
        "truth_grid.json": _json_bytes(grid.to_json_dict()),
    }
    _write_artifacts(Path(args.output_dir), artifacts)
    print(f"dashes={len(records)} canvas={spec.width}x{spec.height} -> {args.output_dir}")
    return EXIT_OK


# ------------------------------------------------------------------ eval


def _cmd_eval(args) -> int:
    predicted = read_csv_records(_read_bytes(Path(args.predicted)))
    truth = read_csv_records(_read_bytes(Path(args.truth)))
    precision, recall, rmse = detection_metrics(predicted, truth, args.tolerance)
    report = {"precision": precision, "recall": recall, "rmse": rmse}
    if args.predicted_mask and args.truth_mask:
        pred_mask = _load_mask(Path(args.predicted_mask))
        truth_mask = _load_mask(Path(args.truth_mask))
        report["iou"] = pixel_iou(pred_mask, truth_mask)
    print(json.dumps(report))
    return EXIT_OK


# ---------------------------------------------------------- stage commands


def _cmd_binarize(args) -> int:
    mask = binarize(load_image(_read_bytes(Path(args.input))), args.threshold)
    Path(args.output).write_bytes(save_pgm(mask))
    return EXIT_OK


def _cmd_rotate(args) -> int:
    mask = rotate(_load_mask(Path(args.input)), args.degrees)
    Path(args.output).write_bytes(save_pgm(mask))
    return EXIT_OK


def _cmd_crop(args) -> int:
    region = RectRegion(args.x0, args.y0, args.width, args.height)
    mask = crop(_load_mask(Path(args.input)), region)
    Path(args.output).write_bytes(save_pgm(mask))
    return EXIT_OK


def _cmd_scan(args) -> int:
    mask = _load_mask(Path(args.mask))
    tile = _load_tile(Path(args.tile))
    hits = scan_locations(mask, tile, args.threshold)
    payload = _json_bytes(hits_to_json_dict(hits))
    if args.out:
        Path(args.out).write_bytes(payload)
    else:
        sys.stdout.write(payload.decode("utf-8"))
    return EXIT_OK


def _cmd_fit(args) -> int:
    doc = json.loads(_read_bytes(Path(args.hits)))
    hits = hits_from_json_dict(doc)
    tile = _load_tile(Path(args.tile))
    grid = fit_grid(hits, tile, FitConfig(args.row_dist_threshold, args.col_dist_factor))
    payload = _json_bytes(grid.to_json_dict())
    if args.out:
        Path(args.out).write_bytes(payload)
    else:
        sys.stdout.write(payload.decode("utf-8"))
    return EXIT_OK


def _cmd_reconstruct(args) -> int:
    grid = GridModel.from_json_dict(json.loads(_read_bytes(Path(args.grid))))
    tile = _load_tile(Path(args.tile))
    mask, records = reconstruct_mask(grid, tile, args.width, args.height)
    Path(args.out_mask).write_bytes(save_pgm(mask))
    if args.out_csv:
        Path(args.out_csv).write_bytes(export_csv(records))
    return EXIT_OK


# ------------------------------------------------------------------ main


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dashgrid",
        description="Refine dash-line segmentation masks and export per-dash coordinates.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("refine", help="run the full pipeline from a JSON config")
    p.add_argument("--config", required=True, help="pipeline config JSON")
    p.add_argument("--output-dir", help="override the config output_dir")
    p.add_argument("--overlap-threshold", type=float, default=None)
    p.add_argument("--row-dist-threshold", type=float, default=None)
    p.add_argument("--col-dist-factor", type=float, default=None)
    p.set_defaults(func=_cmd_refine)

    p = sub.add_parser("synth", help="generate synthetic truth + corrupted masks")
    p.add_argument("--spec", required=True, help="grid spec JSON")
    p.add_argument("--corrupt", help="corruption spec JSON (default: no corruption)")
    p.add_argument("--output-dir", required=True)
    p.set_defaults(func=_cmd_synth)

    p = sub.add_parser("eval", help="score predicted dashes against truth")
    p.add_argument("--predicted", required=True, help="predicted dash CSV")
    p.add_argument("--truth", required=True, help="truth dash CSV")
    p.add_argument("--predicted-mask", help="refined mask PGM (enables IoU)")
    p.add_argument("--truth-mask", help="truth mask PGM (enables IoU)")
    p.add_argument("--tolerance", type=float, default=2.0)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("binarize", help="threshold a grayscale image to a mask")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--threshold", type=int, default=128)
    p.set_defaults(func=_cmd_binarize)

    p = sub.add_parser("rotate", help="rotate a mask counterclockwise")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--degrees", type=float, required=True)
    p.set_defaults(func=_cmd_rotate)

    p = sub.add_parser("crop", help="crop a mask to a rectangle")
    p.add_argument("input")
    p.add_argument("output")
    p.add_argument("--x0", type=int, required=True)
    p.add_argument("--y0", type=int, required=True)
    p.add_argument("--width", type=int, required=True)
    p.add_argument("--height", type=int, required=True)
    p.set_defaults(func=_cmd_crop)

    p = sub.add_parser("scan", help="moving-window overlap scan")
    p.add_argument("mask")
    p.add_argument("tile")
    p.add_argument("--threshold", type=float, default=DEFAULT_OVERLAP_THRESHOLD)
    p.add_argument("--out", help="hits JSON path (default: stdout)")
    p.set_defaults(func=_cmd_scan)

    p = sub.add_parser("fit", help="fit the grid model from a hit list")
    p.add_argument("hits", help="hits JSON from the scan stage")
    p.add_argument("--tile", required=True, help="reference tile PGM")
    p.add_argument("--row-dist-threshold", type=float, required=True)
    p.add_argument("--col-dist-factor", type=float, required=True)
    p.add_argument("--out", help="grid JSON path (default: stdout)")
    p.set_defaults(func=_cmd_fit)

    p = sub.add_parser("reconstruct", help="stamp the tile at every grid cell")
    p.add_argument("grid", help="grid JSON from the fit stage")
    p.add_argument("tile", help="reference tile PGM")
    p.add_argument("--width", type=int, required=True)
    p.add_argument("--height", type=int, required=True)
    p.add_argument("--out-mask", required=True)
    p.add_argument("--out-csv")
    p.set_defaults(func=_cmd_reconstruct)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ValidationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except ProcessingError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PROCESSING
    except (FormatError, OSError, json.JSONDecodeError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
