"""STEC score of a sampled frame set: S * T * R."""

from __future__ import annotations

import json
import threading
from dataclasses import dataclass
from typing import Dict, Optional, Sequence, Tuple

import numpy as np

from .config import StecConfig
from .errors import ValidationError
from .frame_io import VideoManifest, hsv_counts, hsv_histogram, load_frame
from .redundancy import non_redundancy_from_histograms
from .spatial import spatial_entropy
from .temporal import Sample, temporal_entropy, temporal_span


def sig6(x: float) -> float:
    """Round to 6 significant digits."""
    return float(format(x, ".6g"))


@dataclass(frozen=True)
class StecComponents:
    S: float
    E_t: float
    C_t: float
    T: float
    R: float
    stec: float
    video_id: Optional[str] = None

    def to_dict(self) -> dict:
        out = {} if self.video_id is None else {"video_id": self.video_id}
        out.update(
            S=sig6(self.S),
            E_t=sig6(self.E_t),
            C_t=sig6(self.C_t),
            T=sig6(self.T),
            R=sig6(self.R),
            STEC=sig6(self.stec),
        )
        return out


def compose(S: float, E_t: float, C_t: float, R: float, video_id: Optional[str] = None) -> StecComponents:
    T = E_t * C_t
    return StecComponents(S=S, E_t=E_t, C_t=C_t, T=T, R=R, stec=S * T * R, video_id=video_id)


def score_components_json(components: StecComponents) -> str:
    return json.dumps(components.to_dict())


class FrameCache:
    """Per-video memo of decoded frames, HSV counts and spatial entropies.

    One instance belongs to one video within one scoring run; samplers and
    the scorer share it so a frame is decoded and analysed at most once.
    Keys include the config fields each value depends on.
    """

    def __init__(self, manifest: VideoManifest):
        self.manifest = manifest
        self._frames: Dict[int, np.ndarray] = {}
        self._counts: Dict[Tuple[int, Tuple[int, int, int]], np.ndarray] = {}
        self._entropy: Dict[Tuple[int, int], float] = {}
        self._lock = threading.Lock()

    def frame(self, index: int) -> np.ndarray:
        f = self._frames.get(index)
        if f is None:
            f = load_frame(self.manifest, index)
            with self._lock:
                f = self._frames.setdefault(index, f)
        return f

    def hsv_counts(self, index: int, config: StecConfig) -> np.ndarray:
        key = (index, config.hsv_bins)
        c = self._counts.get(key)
        if c is None:
            c = hsv_counts(self.frame(index), config)
            with self._lock:
                c = self._counts.setdefault(key, c)
        return c

    def histogram(self, index: int, config: StecConfig) -> np.ndarray:
        c = self.hsv_counts(index, config)
        return c / float(c.sum())

    def spatial_entropy(self, index: int, config: StecConfig) -> float:
        key = (index, config.radius)
        e = self._entropy.get(key)
        if e is None:
            e = spatial_entropy(self.frame(index), config)
            with self._lock:
                e = self._entropy.setdefault(key, e)
        return e


def score_frames(
    frames: Sequence[np.ndarray],
    sample: Sample,
    config: StecConfig = StecConfig(),
    video_id: Optional[str] = None,
) -> StecComponents:
    """Score already-decoded frames; ``frames[j]`` is the frame at ``sample.indices[j]``."""
    if len(frames) != sample.K:
        raise ValidationError(f"got {len(frames)} frames for a sample of K={sample.K}")
    total = 0.0
    for f in frames:
        total += spatial_entropy(f, config)
    R = non_redundancy_from_histograms([hsv_histogram(f, config) for f in frames])
    return compose(total / sample.K, temporal_entropy(sample, config.B), temporal_span(sample), R, video_id)


def score(
    manifest: VideoManifest,
    sample: Sample,
    config: StecConfig = StecConfig(),
    cache: Optional[FrameCache] = None,
) -> StecComponents:
    """Score ``sample`` against ``manifest``; only the sampled frames are decoded."""
    if sample.n_frames != manifest.n_frames:
        raise ValidationError(
            f"sample is for N={sample.n_frames} but {manifest.video_id!r} has N={manifest.n_frames}"
        )
    if cache is None:
        cache = FrameCache(manifest)
    elif cache.manifest is not manifest and cache.manifest != manifest:
        raise ValidationError("frame cache belongs to a different manifest")

    total = 0.0
    for i in sample.indices:
        total += cache.spatial_entropy(i, config)
    S = total / sample.K
    E_t = temporal_entropy(sample, config.B)
    C_t = temporal_span(sample)
    R = non_redundancy_from_histograms([cache.histogram(i, config) for i in sample.indices])
    return compose(S, E_t, C_t, R, video_id=manifest.video_id)
