"""Pure numpy disk entropy, used when the compiled kernel is unavailable.

Each pixel's neighbourhood is gathered into a row, sorted, and split into
runs of equal gray level. Sorting puts bins in ascending order, and a
row-wise ``cumsum`` adds the per-run terms strictly left to right, so the
result matches the sequential reference bit for bit.
"""

from __future__ import annotations

import math
from functools import lru_cache

import numpy as np

_PAD = 256  # sorts after every gray level
_CHUNK_ELEMS = 1 << 21


def disk_offsets(radius: int) -> list:
    """``(dy, dx)`` pairs with ``dx**2 + dy**2 <= radius**2``, row-major."""
    r2 = radius * radius
    return [
        (dy, dx)
        for dy in range(-radius, radius + 1)
        for dx in range(-radius, radius + 1)
        if dx * dx + dy * dy <= r2
    ]


@lru_cache(maxsize=16)
def _plogp_table(area: int) -> np.ndarray:
    table = np.zeros((area + 1, area + 1), dtype=np.float64)
    for n in range(1, area + 1):
        for c in range(1, n + 1):
            p = c / n
            table[n, c] = p * math.log2(p)
    table.setflags(write=False)
    return table


def local_entropy_u8(gray: np.ndarray, radius: int) -> np.ndarray:
    if radius < 1:
        raise ValueError("radius must be >= 1")
    gray = np.ascontiguousarray(gray, dtype=np.uint8)
    h, w = gray.shape
    offsets = disk_offsets(radius)
    area = len(offsets)
    table = _plogp_table(area)

    r = radius
    padded = np.full((h + 2 * r, w + 2 * r), _PAD, dtype=np.int16)
    padded[r : r + h, r : r + w] = gray

    out = np.empty((h, w), dtype=np.float64)
    rows = max(1, _CHUNK_ELEMS // max(1, w * area))
    for y0 in range(0, h, rows):
        y1 = min(h, y0 + rows)
        stack = np.empty((y1 - y0, w, area), dtype=np.int16)
        for k, (dy, dx) in enumerate(offsets):
            stack[:, :, k] = padded[r + dy + y0 : r + dy + y1, r + dx : r + dx + w]
        stack.sort(axis=-1)
        vals = stack.reshape(-1, area)

        n = np.count_nonzero(vals < _PAD, axis=1)
        starts = np.ones(vals.shape, dtype=bool)
        starts[:, 1:] = vals[:, 1:] != vals[:, :-1]
        flat_starts = np.flatnonzero(starts)
        # col 0 of every row is a start, so runs never cross rows
        lengths = np.diff(np.append(flat_starts, vals.size))
        run_rows = flat_starts // area
        valid = vals.ravel()[flat_starts] < _PAD

        terms = np.zeros(vals.size, dtype=np.float64)
        terms[flat_starts[valid]] = table[n[run_rows[valid]], lengths[valid]]
        acc = np.cumsum(terms.reshape(vals.shape), axis=1)[:, -1]
        out[y0:y1] = (0.0 - acc).reshape(y1 - y0, w)
    return out
