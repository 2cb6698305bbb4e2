"""``stec`` command line.

Exit codes: 0 success, 1 validation or usage error, 2 IO error,
3 bench finished but some videos failed.
"""

from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import List, Optional

from . import __version__
from .config import StecConfig
from .errors import FrameIOError, StecError, ValidationError
from .frame_io import load_manifest
from .harness import bench_corpus, generate_synthetic_corpus, summarize
from .samplers import METHODS, SamplerSpec, run_sampler
from .score import score, score_components_json
from .spatial import BACKEND
from .temporal import Sample

EXIT_OK, EXIT_INVALID, EXIT_IO, EXIT_PARTIAL = 0, 1, 2, 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def _u64(text: str) -> int:
    value = int(text, 0)
    if not 0 <= value < 2**64:
        raise argparse.ArgumentTypeError(f"{text} is not an unsigned 64-bit integer")
    return value


def _int_list(text: str) -> List[int]:
    try:
        return [int(t) for t in text.split(",") if t.strip()]
    except ValueError as exc:
        raise argparse.ArgumentTypeError(f"bad index list {text!r}") from exc


def _config(args) -> StecConfig:
    cfg = StecConfig.from_json(args.config) if getattr(args, "config", None) else StecConfig()
    overrides = cfg.to_dict()
    if getattr(args, "k", None) is not None:
        overrides["K"] = args.k
    if getattr(args, "seed", None) is not None:
        overrides["seed"] = args.seed
    return StecConfig.from_dict(overrides)


def cmd_score(args) -> int:
    cfg = _config(args)
    manifest = load_manifest(args.manifest)
    sample = Sample.from_unsorted(args.indices, manifest.n_frames)
    comp = score(manifest, sample, cfg)
    if args.json:
        print(score_components_json(comp))
    else:
        d = comp.to_dict()
        print(f"video: {manifest.video_id}  N={manifest.n_frames}  K={sample.K}")
        for key in ("S", "E_t", "C_t", "T", "R", "STEC"):
            print(f"{key:>5}: {d[key]}")
    return EXIT_OK


def cmd_sample(args) -> int:
    cfg = _config(args)
    manifest = load_manifest(args.manifest)
    sample = run_sampler(SamplerSpec(args.method, cfg.K, cfg.seed), manifest, cfg)
    print(",".join(str(i) for i in sample.indices))
    return EXIT_OK


def cmd_bench(args) -> int:
    cfg = _config(args)
    methods = [SamplerSpec(m.strip(), cfg.K, cfg.seed) for m in args.methods.split(",") if m.strip()]
    _, n_errors = bench_corpus(args.corpus, methods, cfg, out=args.out, workers=args.workers)
    if n_errors:
        print(f"bench finished with {n_errors} failed (video, method) pairs", file=sys.stderr)
        return EXIT_PARTIAL
    return EXIT_OK


def cmd_report(args) -> int:
    report = summarize(args.infile)
    if args.json:
        print(json.dumps(report.to_dict(), indent=2))
    else:
        print(report.format_table(wins=args.wins, quartiles=args.quartiles))
    return EXIT_OK


def cmd_synth(args) -> int:
    out = generate_synthetic_corpus(
        args.out, args.videos, args.seed, width=args.width, height=args.height, noise=args.noise
    )
    print(out)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    ap = _Parser(prog="stec", description="Non-reference evaluation of video frame sampling.")
    ap.add_argument("--version", action="version", version=f"%(prog)s {__version__} ({BACKEND} kernel)")
    ap.add_argument("-v", "--verbose", action="store_true")
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    p = sub.add_parser("score", help="score a given set of frame indices")
    p.add_argument("--manifest", required=True)
    p.add_argument("--indices", required=True, type=_int_list, help="comma-separated frame indices")
    p.add_argument("--config", help="config JSON text or path")
    p.add_argument("--json", action="store_true", help="emit one JSON record")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("sample", help="print the indices a sampler picks")
    p.add_argument("--manifest", required=True)
    p.add_argument("--method", required=True, choices=METHODS)
    p.add_argument("-k", type=int, help="sampling budget (default: config K)")
    p.add_argument("--seed", type=_u64, help="seed for the random sampler")
    p.add_argument("--config", help="config JSON text or path")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("bench", help="evaluate samplers over a corpus, write CSV")
    p.add_argument("--corpus", required=True)
    p.add_argument("--methods", default=",".join(METHODS), help="comma-separated sampler names")
    p.add_argument("-k", type=int)
    p.add_argument("--seed", type=_u64)
    p.add_argument("--out", required=True)
    p.add_argument("--config", help="config JSON text or path")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_bench)

    p = sub.add_parser("report", help="summarize a bench CSV")
    p.add_argument("--in", dest="infile", required=True)
    p.add_argument("--wins", action="store_true", help="include win counts")
    p.add_argument("--quartiles", action="store_true", help="include STEC quartiles")
    p.add_argument("--json", action="store_true", help="emit the full summary as JSON")
    p.set_defaults(func=cmd_report)

    p = sub.add_parser("synth", help="write a deterministic synthetic corpus")
    p.add_argument("--out", required=True)
    p.add_argument("--videos", type=int, default=50)
    p.add_argument("--seed", type=_u64, default=42)
    p.add_argument("--width", type=int, default=64)
    p.add_argument("--height", type=int, default=48)
    p.add_argument("--noise", type=float, default=4.0)
    p.set_defaults(func=cmd_synth)
    return ap


def main(argv: Optional[List[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.INFO if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.func(args)
    except FrameIOError as exc:
        print(f"stec: io error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (ValidationError, StecError) as exc:
        print(f"stec: error: {exc}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
