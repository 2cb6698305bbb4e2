"""Non-redundancy of a sample from colour histograms of neighbouring frames."""

from __future__ import annotations

import math
from typing import Sequence

import numpy as np

from .config import StecConfig
from .errors import SampleTooSmallError, ValidationError
from .frame_io import hsv_histogram


def cosine_sim(a: np.ndarray, b: np.ndarray) -> float:
    """Cosine similarity of two nonnegative histograms, clamped to [0, 1]."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.shape != b.shape or a.ndim != 1:
        raise ValidationError(f"histogram shapes differ: {a.shape} vs {b.shape}")
    na = math.sqrt(float(np.dot(a, a)))
    nb = math.sqrt(float(np.dot(b, b)))
    if na == 0.0 or nb == 0.0:
        raise ValidationError("cosine similarity of an all-zero histogram is undefined")
    return min(max(float(np.dot(a, b)) / (na * nb), 0.0), 1.0)


def non_redundancy_from_histograms(hists: Sequence[np.ndarray]) -> float:
    """``1 - mean(sim(h[j], h[j+1]))`` over temporally adjacent pairs."""
    if len(hists) < 2:
        raise SampleTooSmallError(f"non-redundancy needs at least 2 frames, got {len(hists)}")
    total = 0.0
    for a, b in zip(hists, hists[1:]):
        total += cosine_sim(a, b)
    r = 1.0 - total / (len(hists) - 1)
    return min(max(r, 0.0), 1.0)


def non_redundancy(frames: Sequence[np.ndarray], config: StecConfig = StecConfig()) -> float:
    """Non-redundancy of frames given in ascending temporal order."""
    if len(frames) < 2:
        raise SampleTooSmallError(f"non-redundancy needs at least 2 frames, got {len(frames)}")
    return non_redundancy_from_histograms([hsv_histogram(f, config) for f in frames])
