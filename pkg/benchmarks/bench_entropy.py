"""Time the disk-entropy kernels against each other.

    python benchmarks/bench_entropy.py --size 224 --radius 6 --repeat 5

The compiled kernel is timed only if the extension was built.
"""

import argparse
import time

import numpy as np

from stec import _entropy_py
from stec.spatial import laplacian, local_entropy_naive, normalize_u8, to_grayscale

try:
    from stec import _entropy_ext
except ImportError:  # extension not built
    _entropy_ext = None


def best_of(fn, repeat):
    best, out = float("inf"), None
    for _ in range(repeat):
        t0 = time.perf_counter()
        out = fn()
        best = min(best, time.perf_counter() - t0)
    return best, out


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--size", type=int, default=224)
    ap.add_argument("--radius", type=int, default=6)
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--seed", type=int, default=0)
    args = ap.parse_args(argv)

    rng = np.random.default_rng(args.seed)
    frame = rng.integers(0, 256, (args.size, args.size, 3), dtype=np.uint8)
    g = normalize_u8(laplacian(to_grayscale(frame)))
    r = args.radius

    kernels = [("naive", lambda: local_entropy_naive(g, r), 1)]
    kernels.append(("numpy", lambda: _entropy_py.local_entropy_u8(g, r), args.repeat))
    if _entropy_ext is not None:
        kernels.append(("cython", lambda: np.asarray(_entropy_ext.local_entropy_u8(g, r)), args.repeat))

    results = {}
    for name, fn, rep in kernels:
        results[name] = best_of(fn, rep)

    base_t, base = results["naive"]
    print(f"{args.size}x{args.size}, radius {r}")
    print(f"{'kernel':<8} {'seconds':>9} {'speedup':>8}  bit-exact")
    for name, (t, out) in results.items():
        same = np.array_equal(out.view(np.uint64), base.view(np.uint64))
        print(f"{name:<8} {t:9.4f} {base_t / t:7.1f}x  {same}")


if __name__ == "__main__":
    main()
