"""Metric hyperparameters and their JSON form."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Mapping, Tuple

from .errors import FrameIOError, ValidationError

_U64_MAX = 2**64 - 1


@dataclass(frozen=True)
class StecConfig:
    """All knobs of the metric and the reference samplers.

    Defaults: K=16 sampled frames, B=8 temporal bins, entropy disk of
    radius 6 px, a 16x4x4 HSV histogram and seed 42.
    """

    K: int = 16
    B: int = 8
    radius: int = 6
    hsv_bins: Tuple[int, int, int] = (16, 4, 4)
    seed: int = 42

    def __post_init__(self) -> None:
        object.__setattr__(self, "hsv_bins", tuple(int(b) for b in self.hsv_bins))
        if self.K < 2:
            raise ValidationError(f"K must be >= 2, got {self.K}")
        if self.B < 1:
            raise ValidationError(f"B must be >= 1, got {self.B}")
        if self.radius < 1:
            raise ValidationError(f"radius must be >= 1, got {self.radius}")
        if len(self.hsv_bins) != 3 or min(self.hsv_bins) < 1:
            raise ValidationError(f"hsv_bins must be three counts >= 1, got {self.hsv_bins}")
        if not 0 <= self.seed <= _U64_MAX:
            raise ValidationError(f"seed must be an unsigned 64-bit integer, got {self.seed}")

    @property
    def n_hsv_bins(self) -> int:
        h, s, v = self.hsv_bins
        return h * s * v

    def to_dict(self) -> dict:
        return {
            "K": self.K,
            "B": self.B,
            "radius": self.radius,
            "hsv_bins": list(self.hsv_bins),
            "seed": self.seed,
        }

    @classmethod
    def from_dict(cls, data: Mapping[str, Any]) -> "StecConfig":
        unknown = set(data) - {"K", "B", "radius", "hsv_bins", "seed"}
        if unknown:
            raise ValidationError(f"unknown config keys: {sorted(unknown)}")
        try:
            kwargs = {k: (tuple(v) if k == "hsv_bins" else int(v)) for k, v in data.items()}
        except (TypeError, ValueError) as exc:
            raise ValidationError(f"bad config value: {exc}") from exc
        return cls(**kwargs)

    @classmethod
    def from_json(cls, text_or_path: str) -> "StecConfig":
        """Parse inline JSON text, or read it from a file path."""
        text = text_or_path
        if not text_or_path.lstrip().startswith("{"):
            try:
                text = Path(text_or_path).read_text(encoding="utf-8")
            except OSError as exc:
                raise FrameIOError(f"cannot read config {text_or_path}: {exc}") from exc
        try:
            data = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ValidationError(f"config is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise ValidationError("config JSON must be an object")
        return cls.from_dict(data)
