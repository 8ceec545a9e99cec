#!/usr/bin/env python3
"""Regenerate the committed CLI fixtures from the spec JSONs in this directory.

The derived artifacts (tile.pgm, corrupted.pgm, golden/*) are committed so
the golden tests run without a generation step. test_fixture_provenance in
tests/test_cli.py re-derives everything and fails if the files drift from
what the specs produce.

The golden files come from the generator truth, not from running the
pipeline: for this fixture the refinement is expected to reproduce the
uncorrupted grid exactly, so truth doubles as the expected refine output.
"""
import sys
from pathlib import Path

HERE = Path(__file__).resolve().parent
sys.path.insert(0, str(HERE.parents[1] / "src"))

import numpy as np

from dashgrid import corrupt, export_csv, generate, save_pgm
from dashgrid.config import load_corruption_spec, load_synth_spec


def build() -> dict[str, bytes]:
    spec = load_synth_spec(HERE / "synth_spec.json")
    cspec = load_corruption_spec(HERE / "corruption.json")
    mask, truth, _ = generate(spec)
    corrupted = corrupt(mask, truth, cspec)
    tile = np.ones((spec.tile_height, spec.tile_width), dtype=bool)
    return {
        "tile.pgm": save_pgm(tile),
        "corrupted.pgm": save_pgm(corrupted),
        "golden/dashes.csv": export_csv(truth),
        "golden/refined.pgm": save_pgm(mask),
    }


def main() -> None:
    for rel, payload in build().items():
        path = HERE / rel
        path.parent.mkdir(parents=True, exist_ok=True)
        path.write_bytes(payload)
        print(f"wrote {rel} ({len(payload)} bytes)")


if __name__ == "__main__":
    main()
