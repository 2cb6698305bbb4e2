"""Temporal statistics of a sampled frame set.

Indices are 0-based; a frame at index ``i`` of an ``N``-frame video sits at
normalized position ``i / (N - 1)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, List, Tuple

from .errors import BoundsError, DegenerateVideoError, SampleTooSmallError, ValidationError


@dataclass(frozen=True)
class Sample:
    """A strictly increasing set of at least two frame indices into an N-frame video."""

    indices: Tuple[int, ...]
    n_frames: int

    def __post_init__(self) -> None:
        idx = tuple(int(i) for i in self.indices)
        object.__setattr__(self, "indices", idx)
        if self.n_frames < 2:
            raise DegenerateVideoError(f"need a video of at least 2 frames, got N={self.n_frames}")
        if len(idx) < 2:
            raise SampleTooSmallError(f"need at least 2 sampled frames, got {len(idx)}")
        if len(set(idx)) != len(idx):
            raise ValidationError(f"duplicate frame indices in sample {list(idx)}")
        if any(b <= a for a, b in zip(idx, idx[1:])):
            raise ValidationError(f"sample indices must be ascending: {list(idx)}")
        if idx[0] < 0 or idx[-1] >= self.n_frames:
            raise BoundsError(f"sample indices must lie in [0, {self.n_frames - 1}]: {list(idx)}")

    @classmethod
    def from_unsorted(cls, indices: Iterable[int], n_frames: int) -> "Sample":
        """Sort ``indices``; duplicates are still rejected."""
        return cls(tuple(sorted(int(i) for i in indices)), n_frames)

    @property
    def K(self) -> int:
        return len(self.indices)


def normalized_positions(sample: Sample) -> List[float]:
    span = sample.n_frames - 1
    if span < 1:
        raise DegenerateVideoError("normalized positions need N >= 2")
    return [i / span for i in sample.indices]


def bin_counts(sample: Sample, bins: int) -> List[int]:
    """Occupancy of ``bins`` equal-width bins over [0, 1]; position 1 goes to the last bin.

    ``floor(tau * B)`` is evaluated as ``(B * i) // (N - 1)`` so no float
    rounding can move a frame across a bin edge.
    """
    if bins < 1:
        raise ValidationError(f"bins must be >= 1, got {bins}")
    span = sample.n_frames - 1
    counts = [0] * bins
    for i in sample.indices:
        counts[min(bins * i // span, bins - 1)] += 1
    return counts


def temporal_entropy(sample: Sample, bins: int) -> float:
    """Shannon entropy of bin occupancy divided by ``ln(bins)``, in [0, 1].

    Empty bins contribute nothing. With a single bin the value is 1 by
    convention, since the normalizer ``ln 1`` vanishes.
    """
    counts = bin_counts(sample, bins)
    if bins == 1:
        return 1.0
    k = sample.K
    acc = 0.0
    for c in counts:
        if c:
            p = c / k
            acc += p * math.log(p)
    e = (0.0 - acc) / math.log(bins)
    return min(max(e, 0.0), 1.0)


def temporal_span(sample: Sample) -> float:
    return (sample.indices[-1] - sample.indices[0]) / (sample.n_frames - 1)


def temporal_coverage(sample: Sample, bins: int) -> float:
    return temporal_entropy(sample, bins) * temporal_span(sample)
