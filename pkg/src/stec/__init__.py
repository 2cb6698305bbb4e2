"""STEC: spatio-temporal entropy coverage for evaluating sampled video frames."""

__version__ = "0.1.0"

from .config import StecConfig
from .errors import (
    BoundsError,
    DegenerateVideoError,
    FrameIOError,
    SampleTooSmallError,
    StecError,
    ValidationError,
)
from .frame_io import (
    VideoManifest,
    hsv_histogram,
    load_frame,
    load_manifest,
    read_image,
    to_grayscale,
)
from .redundancy import cosine_sim, non_redundancy
from .samplers import SamplerSpec, sample_content_aware, sample_random, sample_uniform
from .score import FrameCache, StecComponents, score, score_components_json, score_frames
from .spatial import BACKEND, laplacian, local_entropy, normalize_u8, spatial_entropy
from .temporal import (
    Sample,
    normalized_positions,
    temporal_coverage,
    temporal_entropy,
    temporal_span,
)

__all__ = [
    "BACKEND",
    "BoundsError",
    "DegenerateVideoError",
    "FrameCache",
    "FrameIOError",
    "Sample",
    "SampleTooSmallError",
    "SamplerSpec",
    "StecComponents",
    "StecConfig",
    "StecError",
    "ValidationError",
    "VideoManifest",
    "cosine_sim",
    "hsv_histogram",
    "laplacian",
    "load_frame",
    "load_manifest",
    "local_entropy",
    "non_redundancy",
    "normalize_u8",
    "normalized_positions",
    "read_image",
    "sample_content_aware",
    "sample_random",
    "sample_uniform",
    "score",
    "score_components_json",
    "score_frames",
    "spatial_entropy",
    "temporal_coverage",
    "temporal_entropy",
    "temporal_span",
    "to_grayscale",
]
