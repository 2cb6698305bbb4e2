"""Reference frame samplers: random, uniform and a content-aware proxy."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .config import StecConfig
from .errors import ValidationError
from .frame_io import VideoManifest
from .score import FrameCache
from .temporal import Sample

METHODS = ("random", "uniform", "content")
MAX_CANDIDATES = 256


@dataclass(frozen=True)
class SamplerSpec:
    method: str
    K: int = 16
    seed: int = 42

    def __post_init__(self) -> None:
        if self.method not in METHODS:
            raise ValidationError(f"unknown sampler {self.method!r}; choose from {', '.join(METHODS)}")
        if self.K < 2:
            raise ValidationError(f"K must be >= 2, got {self.K}")


def _check_budget(n: int, k: int) -> None:
    if k < 2:
        raise ValidationError(f"K must be >= 2, got {k}")
    if k > n:
        raise ValidationError(f"cannot sample K={k} distinct frames from N={n}")


def sample_random(n: int, k: int, seed: int) -> Sample:
    """K distinct indices drawn uniformly without replacement.

    The generator is numpy's Philox (a counter-based 64-bit PRNG) keyed by
    ``seed``, so a seed reproduces the same sample on every run.
    """
    _check_budget(n, k)
    rng = np.random.Generator(np.random.Philox(seed))
    picks = rng.choice(n, size=k, replace=False)
    return Sample(tuple(sorted(int(i) for i in picks)), n)


def sample_uniform(n: int, k: int) -> Sample:
    """Evenly spaced indices ``round(j (N-1) / (K-1))``, endpoints included.

    Rounding is half-up in exact integer arithmetic. Should two targets round
    to the same frame, the later one moves to the next free index.
    """
    _check_budget(n, k)
    den = 2 * (k - 1)
    out = []
    for j in range(k):
        i = (2 * j * (n - 1) + (k - 1)) // den
        if out and i <= out[-1]:
            i = out[-1] + 1
        out.append(i)
    return Sample(tuple(out), n)


def candidate_indices(n: int, k: int) -> range:
    """At most 256 evenly strided candidates; the stride shrinks if fewer than K would remain."""
    stride = math.ceil(n / MAX_CANDIDATES)
    if len(range(0, n, stride)) < k:
        stride = max(1, n // k)
    return range(0, n, stride)


def cosine_distance_matrix(counts: np.ndarray) -> np.ndarray:
    """Pairwise ``1 - cos`` between rows of an integer count matrix.

    Dot products are exact int64 sums (no BLAS), so identical histograms give
    bit-identical rows, zero mutual distance, and ties resolve purely by index.
    """
    counts = np.asarray(counts, dtype=np.int64)
    dots = np.einsum("ik,jk->ij", counts, counts).astype(np.float64)
    sq = np.diag(dots)
    # sqrt(x * x) == x in IEEE arithmetic, so identical rows give exactly 1
    sim = dots / np.sqrt(sq[:, None] * sq[None, :])
    return 1.0 - np.clip(sim, 0.0, 1.0)


def farthest_point_order(dist: np.ndarray, k: int) -> list:
    """Medoid first, then repeatedly the point farthest from the chosen set.

    ``np.argmin``/``np.argmax`` return the first extremum, so ties go to the
    smaller position.
    """
    m = dist.shape[0]
    chosen = [int(np.argmin(dist.sum(axis=1)))]
    nearest = dist[chosen[0]].copy()
    nearest[chosen[0]] = -np.inf
    while len(chosen) < min(k, m):
        j = int(np.argmax(nearest))
        chosen.append(j)
        nearest = np.minimum(nearest, dist[j])
        nearest[chosen] = -np.inf
    return chosen


def sample_content_aware(
    manifest: VideoManifest,
    k: int,
    config: StecConfig = StecConfig(),
    cache: Optional[FrameCache] = None,
) -> Sample:
    """Greedy farthest-point selection over HSV histograms of strided candidates."""
    n = manifest.n_frames
    _check_budget(n, k)
    if cache is None:
        cache = FrameCache(manifest)
    cands = candidate_indices(n, k)
    counts = np.stack([cache.hsv_counts(i, config) for i in cands])
    order = farthest_point_order(cosine_distance_matrix(counts), k)
    return Sample(tuple(sorted(cands[j] for j in order)), n)


def run_sampler(
    spec: SamplerSpec,
    manifest: VideoManifest,
    config: StecConfig = StecConfig(),
    cache: Optional[FrameCache] = None,
) -> Sample:
    n = manifest.n_frames
    if spec.method == "random":
        return sample_random(n, spec.K, spec.seed)
    if spec.method == "uniform":
        return sample_uniform(n, spec.K)
    return sample_content_aware(manifest, spec.K, config, cache)
