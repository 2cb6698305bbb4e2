"""Per-frame spatial entropy.

Pipeline: grayscale -> 3x3 Laplacian -> min-max to 8 bit -> disk entropy
filter -> mean over all pixels. The result is in bits, within ``[0, 8]``.

The disk filter runs on the compiled kernel when it was built and on a
numpy implementation otherwise. Set ``STEC_PURE_PYTHON=1`` to force the
numpy path. Both agree bit for bit with :func:`local_entropy_naive`.
"""

from __future__ import annotations

import math
import os

import numpy as np

from . import _entropy_py
from ._entropy_py import disk_offsets
from .config import StecConfig
from .frame_io import to_grayscale

__all__ = [
    "BACKEND",
    "disk_offsets",
    "laplacian",
    "local_entropy",
    "local_entropy_naive",
    "normalize_u8",
    "spatial_entropy",
]

_numpy_kernel = _entropy_py.local_entropy_u8

if os.environ.get("STEC_PURE_PYTHON", "") not in ("", "0"):
    _kernel, BACKEND = _numpy_kernel, "numpy"
else:
    try:
        from ._entropy_ext import local_entropy_u8 as _kernel

        BACKEND = "cython"
    except ImportError:  # extension not built
        _kernel, BACKEND = _numpy_kernel, "numpy"

_LAPLACIAN = np.array([[0, 1, 0], [1, -4, 1], [0, 1, 0]], dtype=np.int32)


def laplacian(gray: np.ndarray) -> np.ndarray:
    """4-neighbour Laplacian with reflect-101 borders; int32 output.

    Reflect-101 mirrors about the edge pixel (``dcb|abcd|cba``). numpy's
    ``reflect`` pad mode is exactly that convention.
    """
    g = np.asarray(gray).astype(np.int32)
    if g.ndim != 2 or 0 in g.shape:
        raise ValueError(f"expected a non-empty 2-D gray frame, got shape {g.shape}")
    p = np.pad(g, 1, mode="reflect")
    return p[:-2, 1:-1] + p[2:, 1:-1] + p[1:-1, :-2] + p[1:-1, 2:] - 4 * g


def normalize_u8(resp: np.ndarray) -> np.ndarray:
    """Min-max rescale to ``[0, 255]``, rounding half up; constant maps give 0.

    Uses exact integer arithmetic:
    ``floor(((v - m) * 510 + (M - m)) / (2 (M - m)))``.
    """
    v = np.asarray(resp).astype(np.int64)
    lo, hi = int(v.min()), int(v.max())
    if hi == lo:
        return np.zeros(v.shape, dtype=np.uint8)
    span = hi - lo
    return (((v - lo) * 510 + span) // (2 * span)).astype(np.uint8)


def local_entropy(gray: np.ndarray, radius: int) -> np.ndarray:
    """Shannon entropy (bits) of the 256-level histogram in a disk around each pixel.

    The disk holds offsets with ``dx**2 + dy**2 <= radius**2`` and is clipped
    at the image border.
    """
    if radius < 1:
        raise ValueError(f"radius must be >= 1, got {radius}")
    g = np.ascontiguousarray(gray, dtype=np.uint8)
    if g.ndim != 2:
        raise ValueError(f"expected a 2-D gray frame, got shape {g.shape}")
    return _kernel(g, int(radius))


def local_entropy_naive(gray: np.ndarray, radius: int) -> np.ndarray:
    """Reference implementation: rebuild every pixel's histogram from scratch.

    Slow (pure Python); used as the oracle for the fast paths and in the
    benchmark. Terms are summed in ascending gray level.
    """
    g = np.asarray(gray, dtype=np.uint8).tolist()
    h, w = len(g), len(g[0])
    offsets = disk_offsets(radius)
    out = np.empty((h, w), dtype=np.float64)
    for y in range(h):
        for x in range(w):
            counts = [0] * 256
            n = 0
            for dy, dx in offsets:
                yy, xx = y + dy, x + dx
                if 0 <= yy < h and 0 <= xx < w:
                    counts[g[yy][xx]] += 1
                    n += 1
            acc = 0.0
            for c in counts:
                if c:
                    p = c / n
                    acc += p * math.log2(p)
            out[y, x] = 0.0 - acc
    return out


def entropy_map(frame: np.ndarray, radius: int) -> np.ndarray:
    """Per-pixel entropy map of an RGB frame (before spatial averaging)."""
    return local_entropy(normalize_u8(laplacian(to_grayscale(frame))), radius)


def spatial_entropy(frame: np.ndarray, config: StecConfig = StecConfig()) -> float:
    """Mean local entropy of the frame's normalized Laplacian response, in bits."""
    return float(entropy_map(frame, config.radius).mean())
