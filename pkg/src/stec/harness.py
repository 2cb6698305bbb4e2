"""Corpus benchmarking: synthetic corpora, per-video CSV records, summaries."""

from __future__ import annotations

import colorsys
import csv
import hashlib
import io
import json
import logging
import statistics
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path
from typing import Dict, List, Sequence, Tuple

import numpy as np

from .config import StecConfig
from .errors import FrameIOError, StecError, ValidationError
from .frame_io import load_manifest, write_ppm
from .samplers import SamplerSpec, run_sampler
from .score import FrameCache, score, sig6

log = logging.getLogger(__name__)

CSV_FIELDS = [
    "video_id", "method", "K", "S", "Et", "Ct", "T", "R", "STEC",
    "indices", "width", "height", "n_frames",
]  # fmt: skip
MANIFEST_NAME = "manifest.json"
SEGMENTS_NAME = "segments.json"


# --------------------------------------------------------------------------
# synthetic corpus


@dataclass(frozen=True)
class Segment:
    """A run of frames sharing one colour scheme.

    ``kind`` is ``"solid"`` (flat colour) or ``"textured"`` (a two-colour
    pattern that scrolls over the segment).
    """

    start: int
    length: int
    kind: str
    color: Tuple[int, int, int]
    accent: Tuple[int, int, int] = (0, 0, 0)
    pattern: int = 0


def _hsv_to_rgb(h: float, s: float, v: float) -> Tuple[int, int, int]:
    r, g, b = colorsys.hsv_to_rgb(h % 1.0, s, v)
    return int(round(r * 255)), int(round(g * 255)), int(round(b * 255))


def render_frame(seg: Segment, t: int, width: int, height: int, noise: float, rng) -> np.ndarray:
    """Frame ``t`` (0-based within the segment) of ``seg``."""
    base = np.array(seg.color, dtype=np.float64)
    if seg.kind == "solid":
        img = np.broadcast_to(base, (height, width, 3)).copy()
    else:
        yy, xx = np.mgrid[0:height, 0:width]
        phase = t / max(1, seg.length - 1)
        shift = int(round(phase * width))
        if seg.pattern == 0:  # drifting vertical stripes
            mask = (((xx + shift) // 4) % 2).astype(bool)
        elif seg.pattern == 1:  # drifting checkerboard
            mask = ((((xx + shift) // 6) + (yy // 6)) % 2).astype(bool)
        else:  # expanding ring
            cy, cx = height / 2.0, width / 2.0
            rad = np.hypot(yy - cy, xx - cx)
            mask = ((rad + shift) // 5 % 2).astype(bool)
        img = np.where(mask[..., None], np.array(seg.accent, dtype=np.float64), base)
    if noise > 0:
        img = img + rng.normal(0.0, noise, size=img.shape)
    return np.clip(np.rint(img), 0, 255).astype(np.uint8)


def random_segments(n_frames: int, rng) -> List[Segment]:
    n_seg = int(rng.integers(2, 9))
    min_len = 4
    spare = n_frames - min_len * n_seg
    lengths = min_len + rng.multinomial(spare, rng.dirichlet(np.full(n_seg, 0.8)))
    hues = rng.permutation(12)[:n_seg] / 12.0
    segs, start = [], 0
    for s in range(n_seg):
        textured = rng.random() < 0.6
        sat = float(rng.uniform(0.55, 1.0))
        val = float(rng.uniform(0.45, 0.95))
        color = _hsv_to_rgb(hues[s], sat, val)
        accent = _hsv_to_rgb(
            hues[s] + float(rng.uniform(0.3, 0.7)),
            float(rng.uniform(0.3, 1.0)),
            float(rng.uniform(0.2, 1.0)),
        )
        segs.append(
            Segment(
                start=start,
                length=int(lengths[s]),
                kind="textured" if textured else "solid",
                color=color,
                accent=accent,
                pattern=int(rng.integers(0, 3)),
            )
        )
        start += int(lengths[s])
    return segs


def write_video(
    video_dir: Path,
    video_id: str,
    segments: Sequence[Segment],
    width: int = 64,
    height: int = 48,
    noise: float = 0.0,
    seed: int = 0,
) -> Path:
    """Render ``segments`` as PPM frames plus a pattern manifest and a segments sidecar."""
    video_dir.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(seed)
    n = 0
    for seg in segments:
        for t in range(seg.length):
            write_ppm(video_dir / f"f_{n:05d}.ppm", render_frame(seg, t, width, height, noise, rng))
            n += 1
    manifest = {"video_id": video_id, "pattern": "f_%05d.ppm", "count": n, "start": 0}
    (video_dir / MANIFEST_NAME).write_text(json.dumps(manifest, indent=2) + "\n", encoding="utf-8")
    sidecar = {
        "video_id": video_id,
        "n_frames": n,
        "width": width,
        "height": height,
        "segments": [
            {
                "start": s.start,
                "end": s.start + s.length,
                "kind": s.kind,
                "color": list(s.color),
                "accent": list(s.accent),
                "pattern": s.pattern,
            }
            for s in segments
        ],
    }
    (video_dir / SEGMENTS_NAME).write_text(json.dumps(sidecar, indent=2) + "\n", encoding="utf-8")
    return video_dir / MANIFEST_NAME


def generate_synthetic_corpus(
    out_dir, n_videos: int, seed: int, width: int = 64, height: int = 48, noise: float = 4.0
) -> Path:
    """Write ``n_videos`` deterministic multi-shot videos under ``out_dir``.

    Each video has 64-256 frames split into 2-8 shots of random length.
    Shots are flat or textured (scrolling patterns), and every frame gets Gaussian
    noise. Same arguments give byte-identical output.
    """
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    for v in range(n_videos):
        rng = np.random.default_rng([seed, v])
        n_frames = int(rng.integers(64, 257))
        video_id = f"synth_{v:04d}"
        write_video(
            out / video_id,
            video_id,
            random_segments(n_frames, rng),
            width=width,
            height=height,
            noise=noise,
            seed=int(rng.integers(0, 2**63)),
        )
    return out


# --------------------------------------------------------------------------
# benchmark


def video_seed(seed: int, video_id: str) -> int:
    """Stable unsigned 64-bit seed from the global seed and a video id."""
    digest = hashlib.blake2b(f"{seed}\x00{video_id}".encode("utf-8"), digest_size=8).digest()
    return int.from_bytes(digest, "big")


def find_manifests(corpus_dir) -> List[Path]:
    corpus = Path(corpus_dir)
    if not corpus.is_dir():
        raise ValidationError(f"corpus directory not found: {corpus}")
    found = sorted(corpus.rglob(MANIFEST_NAME))
    if not found:
        raise ValidationError(f"no {MANIFEST_NAME} files under {corpus}")
    return found


def _fmt(x: float) -> str:
    return repr(sig6(x))


def _error_row(video_id: str, spec: SamplerSpec, n_frames="") -> dict:
    row = dict.fromkeys(CSV_FIELDS, "")
    row.update(video_id=video_id, method=spec.method, K=spec.K, indices="ERROR", n_frames=n_frames)
    return row


def evaluate_video(
    manifest_path: Path, methods: Sequence[SamplerSpec], config: StecConfig
) -> Tuple[str, List[dict], int]:
    """Sample and score one video with every method.

    Returns ``(video_id, rows, n_errors)``. Failures become error rows; they
    never propagate.
    """
    try:
        manifest = load_manifest(manifest_path)
    except StecError as exc:
        video_id = manifest_path.parent.name
        log.error("%s: %s", video_id, exc)
        return video_id, [_error_row(video_id, m) for m in methods], len(methods)

    cache = FrameCache(manifest)
    rows, errors = [], 0
    for spec in methods:
        try:
            if spec.method == "random":
                spec = SamplerSpec("random", spec.K, video_seed(config.seed, manifest.video_id))
            sample = run_sampler(spec, manifest, config, cache)
            comp = score(manifest, sample, config, cache)
            h, w = cache.frame(sample.indices[0]).shape[:2]
        except StecError as exc:
            log.error("%s/%s: %s", manifest.video_id, spec.method, exc)
            rows.append(_error_row(manifest.video_id, spec, manifest.n_frames))
            errors += 1
            continue
        rows.append(
            {
                "video_id": manifest.video_id,
                "method": spec.method,
                "K": spec.K,
                "S": _fmt(comp.S),
                "Et": _fmt(comp.E_t),
                "Ct": _fmt(comp.C_t),
                "T": _fmt(comp.T),
                "R": _fmt(comp.R),
                "STEC": _fmt(comp.stec),
                "indices": ";".join(str(i) for i in sample.indices),
                "width": w,
                "height": h,
                "n_frames": manifest.n_frames,
            }
        )
    return manifest.video_id, rows, errors


def bench_corpus(
    corpus_dir,
    methods: Sequence[SamplerSpec],
    config: StecConfig = StecConfig(),
    out=None,
    workers: int = 1,
) -> Tuple[str, int]:
    """Evaluate every video in ``corpus_dir`` with every method.

    Random sampling uses a per-video seed derived from the method's seed and
    the video id, so results do not depend on processing order. Rows are
    ordered by video id, then by method as given; the CSV text is identical
    for any ``workers``. Returns ``(csv_text, n_errors)`` and writes the text
    to ``out`` when given.
    """
    if not methods:
        raise ValidationError("no sampling methods given")
    manifests = find_manifests(corpus_dir)

    def job(p):
        return evaluate_video(p, methods, config)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            results = list(pool.map(job, manifests))
    else:
        results = [job(p) for p in manifests]
    results.sort(key=lambda r: r[0])

    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    writer.writeheader()
    n_errors = 0
    for _, rows, errs in results:
        writer.writerows(rows)
        n_errors += errs
    text = buf.getvalue()
    if out is not None:
        Path(out).write_text(text, encoding="utf-8")
    return text, n_errors


# --------------------------------------------------------------------------
# summaries


@dataclass
class SummaryReport:
    methods: List[str]
    n_videos: int
    means: Dict[str, Dict[str, float]]
    product_of_means: Dict[str, float]
    wins: Dict[str, int]
    sole_wins: Dict[str, int]
    ties: int
    quartiles: Dict[str, Dict[str, float]]
    errored_videos: List[str] = field(default_factory=list)

    def to_dict(self) -> dict:
        return {
            "methods": self.methods,
            "n_videos": self.n_videos,
            "means": self.means,
            "product_of_means": self.product_of_means,
            "wins": self.wins,
            "sole_wins": self.sole_wins,
            "ties": self.ties,
            "quartiles": self.quartiles,
            "errored_videos": self.errored_videos,
        }

    def format_table(self, wins: bool = True, quartiles: bool = True) -> str:
        lines = [f"videos: {self.n_videos}"]
        if self.errored_videos:
            lines.append(f"excluded (errors): {', '.join(self.errored_videos)}")
        head = f"{'method':<10} {'S':>8} {'T':>8} {'R':>8} {'STEC':>8} {'S*T*R':>8}"
        lines += ["", head, "-" * len(head)]
        for m in self.methods:
            mm = self.means[m]
            lines.append(
                f"{m:<10} {mm['S']:8.3f} {mm['T']:8.3f} {mm['R']:8.3f} {mm['STEC']:8.3f} "
                f"{self.product_of_means[m]:8.3f}"
            )
        if wins:
            lines += ["", f"{'method':<10} {'wins':>6} {'sole':>6}", "-" * 24]
            for m in self.methods:
                lines.append(f"{m:<10} {self.wins[m]:6d} {self.sole_wins[m]:6d}")
            lines.append(f"tied videos: {self.ties}")
        if quartiles:
            head = f"{'method':<10} {'min':>8} {'q1':>8} {'median':>8} {'q3':>8} {'max':>8}"
            lines += ["", head, "-" * len(head)]
            for m in self.methods:
                q = self.quartiles[m]
                lines.append(
                    f"{m:<10} {q['min']:8.3f} {q['q1']:8.3f} {q['median']:8.3f} "
                    f"{q['q3']:8.3f} {q['max']:8.3f}"
                )
        return "\n".join(lines)


def quartiles(values: Sequence[float]) -> Dict[str, float]:
    """Five-number summary with inclusive linear interpolation."""
    vals = sorted(values)
    if len(vals) == 1:
        q1 = med = q3 = vals[0]
    else:
        q1, med, q3 = statistics.quantiles(vals, n=4, method="inclusive")
    return {"min": vals[0], "q1": q1, "median": med, "q3": q3, "max": vals[-1]}


def summarize_rows(rows: Sequence[dict]) -> SummaryReport:
    methods: List[str] = []
    by_video: Dict[str, Dict[str, dict]] = {}
    errored = set()
    for row in rows:
        vid, m = row["video_id"], row["method"]
        if m not in methods:
            methods.append(m)
        if m in by_video.setdefault(vid, {}):
            raise ValidationError(f"video {vid!r} has more than one row for method {m!r}")
        if row.get("STEC", "") == "":
            errored.add(vid)
        by_video[vid][m] = row

    videos = sorted(v for v in by_video if v not in errored)
    for vid in videos:
        missing = [m for m in methods if m not in by_video[vid]]
        if missing:
            raise ValidationError(f"video {vid!r} is missing methods: {', '.join(missing)}")
    if not videos:
        raise ValidationError("no complete videos to summarize")

    def col(m, name):
        return [float(by_video[v][m][name]) for v in videos]

    means, prod, quarts = {}, {}, {}
    for m in methods:
        means[m] = {k: statistics.fmean(col(m, k)) for k in ("S", "T", "R", "STEC")}
        prod[m] = means[m]["S"] * means[m]["T"] * means[m]["R"]
        quarts[m] = quartiles(col(m, "STEC"))

    wins = dict.fromkeys(methods, 0)
    sole = dict.fromkeys(methods, 0)
    ties = 0
    for v in videos:
        scores = {m: float(by_video[v][m]["STEC"]) for m in methods}
        best = max(scores.values())
        top = [m for m in methods if scores[m] == best]
        for m in top:
            wins[m] += 1
        if len(top) == 1:
            sole[top[0]] += 1
        else:
            ties += 1
    return SummaryReport(methods, len(videos), means, prod, wins, sole, ties, quarts, sorted(errored))


def read_records(records_csv) -> List[dict]:
    path = Path(records_csv)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise FrameIOError(f"cannot read {path}: {exc}") from exc
    reader = csv.DictReader(io.StringIO(text))
    if reader.fieldnames != CSV_FIELDS:
        raise ValidationError(f"{path}: unexpected CSV header {reader.fieldnames}")
    return list(reader)


def summarize(records_csv) -> SummaryReport:
    return summarize_rows(read_records(records_csv))
