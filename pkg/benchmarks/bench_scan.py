#!/usr/bin/env python3
"""Benchmark the two scan backends on synthetic dash grids.

Times the compiled kernel against the numpy fallback over the same masks,
verifies they emit identical hits, and prints a small table. Run from the
repository root:

    python benchmarks/bench_scan.py [--size 512] [--repeats 7]
"""
import argparse
import sys
import time
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "src"))

import numpy as np

from dashgrid import CorruptionSpec, ReferenceTile, SynthSpec, corrupt, generate
from dashgrid import scan as scan_mod


def best_of(fn, repeats):
    timings = []
    for _ in range(repeats):
        started = time.perf_counter()
        result = fn()
        timings.append(time.perf_counter() - started)
    return min(timings), result


def build_cases(size):
    cases = []
    spec = SynthSpec(
        width=size, height=size, tile_width=20, tile_height=6,
        row_start=40, col_start=40, row_spacing=80, col_spacing=50,
        n_rows=(size - 80) // 80 + 1, n_cols=(size - 100) // 50 + 1,
        jitter=0, seed=7,
    )
    mask, truth, _ = generate(spec)
    tile = ReferenceTile(np.ones((6, 20), dtype=bool))
    cases.append(("clean grid", mask, tile, 0.6))
    corrupted = corrupt(mask, truth, CorruptionSpec(0.3, 2, 0.0, seed=123))
    cases.append(("corrupted grid", corrupted, tile, 0.2))
    noisy = corrupt(mask, truth, CorruptionSpec(0.0, 0, 0.05, seed=5))
    cases.append(("noisy grid", noisy, tile, 0.6))
    rng = np.random.default_rng(11)
    dense = rng.random((size, size)) < 0.5
    cases.append(("dense random", dense, tile, 0.6))
    return cases


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--size", type=int, default=512)
    parser.add_argument("--repeats", type=int, default=7)
    args = parser.parse_args()

    if scan_mod._kernels is None:
        print("compiled kernel not available; build it first:")
        print("    python setup.py build_ext --inplace")
        return 1

    print(f"mask {args.size}x{args.size}, tile 20x6, best of {args.repeats} runs\n")
    header = f"{'case':<16} {'hits':>6} {'numpy':>10} {'compiled':>10} {'speedup':>8}"
    print(header)
    print("-" * len(header))
    for name, mask, tile, threshold in build_cases(args.size):
        t_np, result_np = best_of(lambda: scan_mod._scan_numpy(mask, tile, threshold), args.repeats)
        t_cy, result_cy = best_of(lambda: scan_mod._scan_compiled(mask, tile, threshold), args.repeats)
        identical = all(np.array_equal(a, b) for a, b in zip(result_np, result_cy))
        if not identical:
            print(f"{name}: BACKEND MISMATCH")
            return 1
        print(
            f"{name:<16} {len(result_np[0]):>6} {t_np * 1e3:>8.2f}ms "
            f"{t_cy * 1e3:>8.2f}ms {t_np / t_cy:>7.1f}x"
        )
    print("\nbackends produced identical hits on every case")
    return 0


if __name__ == "__main__":
    sys.exit(main())
