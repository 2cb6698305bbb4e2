"""Video manifests, frame decoding and the per-frame colour representations.

Frames are plain numpy arrays:

* RGB frame: ``(height, width, 3)`` ``uint8``
* gray frame: ``(height, width)`` ``uint8``

Only binary PPM (P6) and PNG are decoded. Video containers are out of scope;
extract frames beforehand (see README).
"""

from __future__ import annotations

import io
import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import Tuple, Union

import numpy as np
from PIL import Image

from .config import StecConfig
from .errors import BoundsError, FrameIOError, ValidationError

PathLike = Union[str, Path]

# exactly one integer conversion; literal percent signs must be escaped as %%
_INT_FIELD = re.compile(r"%[-+ 0#]*\d*[diu]")


@dataclass(frozen=True)
class VideoManifest:
    """A video as an ordered list of frame files."""

    video_id: str
    frame_paths: Tuple[Path, ...]

    def __post_init__(self) -> None:
        paths = tuple(Path(p) for p in self.frame_paths)
        object.__setattr__(self, "frame_paths", paths)
        if not paths:
            raise ValidationError(f"video {self.video_id!r} has no frames")
        if len(set(paths)) != len(paths):
            raise ValidationError(f"video {self.video_id!r} lists duplicate frame paths")

    @property
    def n_frames(self) -> int:
        return len(self.frame_paths)

    def __len__(self) -> int:
        return len(self.frame_paths)


def _expand_pattern(pattern: str, count: int, start: int) -> list:
    stripped = pattern.replace("%%", "")
    if len(_INT_FIELD.findall(stripped)) != 1 or stripped.count("%") != 1:
        raise ValidationError(f"pattern must contain exactly one integer field: {pattern!r}")
    return [pattern % i for i in range(start, start + count)]


def load_manifest(path: PathLike) -> VideoManifest:
    """Read a manifest JSON file.

    Two forms are accepted::

        {"video_id": "v0", "frames": ["a.png", "b.png"]}
        {"video_id": "v0", "pattern": "f_%05d.ppm", "count": 16, "start": 0}

    Relative frame paths resolve against the manifest's directory.
    """
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FrameIOError(f"cannot read manifest {path}: {exc}") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ValidationError(f"manifest {path} is not valid JSON: {exc}") from exc

    if not isinstance(data, dict) or not isinstance(data.get("video_id"), str):
        raise ValidationError(f"manifest {path} needs a string 'video_id'")
    video_id = data["video_id"]

    if "frames" in data:
        if "pattern" in data:
            raise ValidationError(f"manifest {path} has both 'frames' and 'pattern'")
        frames = data["frames"]
        if not isinstance(frames, list) or not all(isinstance(f, str) for f in frames):
            raise ValidationError(f"manifest {path}: 'frames' must be a list of strings")
    elif "pattern" in data:
        pattern, count, start = data["pattern"], data.get("count"), data.get("start", 0)
        if not isinstance(pattern, str):
            raise ValidationError(f"manifest {path}: 'pattern' must be a string")
        for name, value, lo in (("count", count, 1), ("start", start, 0)):
            if isinstance(value, bool) or not isinstance(value, int) or value < lo:
                raise ValidationError(f"manifest {path}: '{name}' must be an integer >= {lo}")
        frames = _expand_pattern(pattern, count, start)
    else:
        raise ValidationError(f"manifest {path} needs 'frames' or 'pattern'")

    base = path.parent
    return VideoManifest(video_id, tuple(base / f for f in frames))


def write_manifest(path: PathLike, video_id: str, frames) -> None:
    """Write an explicit-list manifest; ``frames`` are stored as given."""
    payload = {"video_id": video_id, "frames": [str(f) for f in frames]}
    Path(path).write_text(json.dumps(payload, indent=2) + "\n", encoding="utf-8")


def _ppm_tokens(data: bytes, count: int) -> Tuple[list, int]:
    """Read ``count`` whitespace-separated header tokens, skipping comments."""
    tokens, pos, n = [], 0, len(data)
    while len(tokens) < count:
        while pos < n and data[pos : pos + 1].isspace():
            pos += 1
        if pos < n and data[pos : pos + 1] == b"#":
            while pos < n and data[pos : pos + 1] not in (b"\n", b"\r"):
                pos += 1
            continue
        start = pos
        while pos < n and not data[pos : pos + 1].isspace() and data[pos : pos + 1] != b"#":
            pos += 1
        if start == pos:
            raise FrameIOError("truncated PPM header")
        tokens.append(data[start:pos])
    return tokens, pos


def decode_ppm(data: bytes) -> np.ndarray:
    """Decode a binary 8-bit PPM (P6) into an ``(h, w, 3)`` uint8 array."""
    tokens, pos = _ppm_tokens(data, 4)
    if tokens[0] != b"P6":
        raise FrameIOError(f"not a binary PPM (magic {tokens[0][:8]!r})")
    try:
        width, height, maxval = (int(t) for t in tokens[1:])
    except ValueError as exc:
        raise FrameIOError(f"bad PPM header: {exc}") from exc
    if width < 1 or height < 1:
        raise FrameIOError(f"bad PPM size {width}x{height}")
    if maxval != 255:
        raise FrameIOError(f"unsupported PPM maxval {maxval}; only 8-bit (255) is supported")
    if pos >= len(data) or not data[pos : pos + 1].isspace():
        raise FrameIOError("truncated PPM header")
    pos += 1
    size = width * height * 3
    if len(data) - pos < size:
        raise FrameIOError(f"truncated PPM data: need {size} bytes, have {len(data) - pos}")
    return np.frombuffer(data, dtype=np.uint8, count=size, offset=pos).reshape(height, width, 3).copy()


def encode_ppm(frame: np.ndarray) -> bytes:
    frame = validate_frame(frame)
    h, w, _ = frame.shape
    return b"P6\n%d %d\n255\n" % (w, h) + frame.tobytes()


def write_ppm(path: PathLike, frame: np.ndarray) -> None:
    Path(path).write_bytes(encode_ppm(frame))


def read_image(path: PathLike) -> np.ndarray:
    """Decode a PPM or PNG file into an RGB uint8 array."""
    path = Path(path)
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise FrameIOError(f"cannot read frame {path}: {exc}") from exc
    if data[:2] == b"P6":
        try:
            return decode_ppm(data)
        except FrameIOError as exc:
            raise FrameIOError(f"{path}: {exc}") from exc
    if data[:8] == b"\x89PNG\r\n\x1a\n":
        try:
            with Image.open(io.BytesIO(data)) as img:
                img.load()
                return np.asarray(img.convert("RGB"), dtype=np.uint8).copy()
        except (OSError, ValueError, SyntaxError) as exc:
            raise FrameIOError(f"{path}: cannot decode PNG: {exc}") from exc
    raise FrameIOError(f"{path}: unsupported image format (expected PNG or binary PPM)")


def load_frame(manifest: VideoManifest, index: int) -> np.ndarray:
    if not 0 <= index < manifest.n_frames:
        raise BoundsError(
            f"frame index {index} out of range for {manifest.video_id!r} (N={manifest.n_frames})"
        )
    return read_image(manifest.frame_paths[index])


def validate_frame(frame: np.ndarray) -> np.ndarray:
    frame = np.asarray(frame)
    if frame.ndim != 3 or frame.shape[2] != 3 or frame.shape[0] < 1 or frame.shape[1] < 1:
        raise ValidationError(f"expected an (h, w, 3) RGB frame, got shape {frame.shape}")
    if frame.dtype != np.uint8:
        if not np.issubdtype(frame.dtype, np.integer) or frame.min() < 0 or frame.max() > 255:
            raise ValidationError("RGB channels must be integers in [0, 255]")
        frame = frame.astype(np.uint8)
    return frame


def to_grayscale(frame: np.ndarray) -> np.ndarray:
    """BT.601 luma, rounded half up.

    Evaluated in integer thousandths so ``x.5`` cases round the same way on
    every platform: ``y = (299 R + 587 G + 114 B + 500) // 1000``.
    """
    rgb = validate_frame(frame).astype(np.int32)
    y = (299 * rgb[..., 0] + 587 * rgb[..., 1] + 114 * rgb[..., 2] + 500) // 1000
    return np.clip(y, 0, 255).astype(np.uint8)


def hsv_bin_indices(frame: np.ndarray, bins: Tuple[int, int, int]) -> np.ndarray:
    """Flat joint (H, S, V) bin index of every pixel.

    Hexcone HSV with H in [0, 360) (0 when S = 0), S = (max - min) / max and
    V = max / 255. For 8-bit input every bin edge comparison is a ratio of
    small integers, so bins are computed exactly:
    ``floor(H / 360 * hb) = (hb * h6) // (6 * delta)`` where ``h6 / delta``
    is the hue in sextants.
    """
    hb, sb, vb = bins
    rgb = validate_frame(frame).astype(np.int64)
    r, g, b = rgb[..., 0], rgb[..., 1], rgb[..., 2]
    cmax = rgb.max(axis=-1)
    delta = cmax - rgb.min(axis=-1)

    h6 = np.where(
        cmax == r,
        np.mod(g - b, 6 * np.maximum(delta, 1)),
        np.where(cmax == g, b - r + 2 * delta, r - g + 4 * delta),
    )
    safe = np.maximum(delta, 1)
    hi = np.where(delta > 0, (hb * h6) // (6 * safe), 0)
    si = np.where(cmax > 0, (sb * delta) // np.maximum(cmax, 1), 0)
    vi = (vb * cmax) // 255
    hi = np.minimum(hi, hb - 1)
    si = np.minimum(si, sb - 1)
    vi = np.minimum(vi, vb - 1)
    return (hi * sb + si) * vb + vi


def hsv_counts(frame: np.ndarray, config: StecConfig = StecConfig()) -> np.ndarray:
    """Joint HSV pixel counts, flattened in (H, S, V) C-order; int64."""
    hb, sb, vb = config.hsv_bins
    flat = hsv_bin_indices(frame, config.hsv_bins)
    return np.bincount(flat.ravel(), minlength=hb * sb * vb)


def hsv_histogram(frame: np.ndarray, config: StecConfig = StecConfig()) -> np.ndarray:
    """Joint HSV histogram normalized to unit l1 mass."""
    counts = hsv_counts(frame, config)
    return counts / float(counts.sum())
