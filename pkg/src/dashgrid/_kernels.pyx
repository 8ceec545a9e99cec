# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled moving-window overlap kernel.

Counts, for every window origin, how many of the tile's foreground pixels
land on mask foreground, and emits the windows whose overlap fraction
strictly exceeds the threshold. Hit content and order are identical to the
numpy fallback in dashgrid.scan; the only difference is speed.

Two pruning steps keep the scan cheap on mostly-empty masks without
changing the result: an integral image skips windows whose total
foreground cannot reach the acceptance count, and the per-pixel loop
abandons a window as soon as the remaining tile pixels cannot lift it
over the threshold. Accepted windows always run to completion, so their
counts are exact.
"""

import numpy as np


def scan_hits(const unsigned char[:, ::1] mask,
              Py_ssize_t tile_h, Py_ssize_t tile_w,
              const Py_ssize_t[::1] tile_ys, const Py_ssize_t[::1] tile_xs,
              double threshold, Py_ssize_t on_count):
    cdef Py_ssize_t h = mask.shape[0]
    cdef Py_ssize_t w = mask.shape[1]
    cdef Py_ssize_t out_h = h - tile_h + 1
    cdef Py_ssize_t out_w = w - tile_w + 1
    cdef Py_ssize_t n = tile_ys.shape[0]

    # Smallest matched count whose fraction clears the threshold, found with
    # the same float comparison the fallback applies elementwise, so both
    # backends accept exactly the same windows. threshold >= 0 makes need >= 1.
    cdef Py_ssize_t need = on_count + 1
    cdef Py_ssize_t c
    for c in range(on_count + 1):
        if (<double> c) / (<double> on_count) > threshold:
            need = c
            break

    # integral image: ii[y+1, x+1] = number of foreground pixels above-left of (x, y)
    ii_arr = np.zeros((h + 1, w + 1), dtype=np.int64)
    cdef long long[:, ::1] ii = ii_arr
    cdef Py_ssize_t y, x
    for y in range(h):
        for x in range(w):
            ii[y + 1, x + 1] = mask[y, x] + ii[y, x + 1] + ii[y + 1, x] - ii[y, x]

    hit_ys = []
    hit_xs = []
    hit_counts = []

    cdef Py_ssize_t i, count
    cdef long long window_total
    for y in range(out_h):
        for x in range(out_w):
            window_total = (
                ii[y + tile_h, x + tile_w] - ii[y, x + tile_w]
                - ii[y + tile_h, x] + ii[y, x]
            )
            if window_total < need:
                continue
            count = 0
            for i in range(n):
                count += mask[y + tile_ys[i], x + tile_xs[i]]
                if count + (n - 1 - i) < need:
                    count = -1
                    break
            if count >= need:
                hit_ys.append(y)
                hit_xs.append(x)
                hit_counts.append(count)

    return (
        np.asarray(hit_ys, dtype=np.intp),
        np.asarray(hit_xs, dtype=np.intp),
        np.asarray(hit_counts, dtype=np.int64),
    )
