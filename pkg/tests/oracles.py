"""Slow, independent reference computations used to check the library.

Nothing here imports the code under test, except for data containers.
"""

from __future__ import annotations

import math
from collections import Counter
from fractions import Fraction


def round_half_up(q: Fraction) -> int:
    return math.floor(q + Fraction(1, 2))


def gray(rgb) -> list:
    """BT.601 luma of an (h, w, 3) nested list, exact rational arithmetic."""
    w = (Fraction(299, 1000), Fraction(587, 1000), Fraction(114, 1000))
    return [
        [min(255, max(0, round_half_up(w[0] * p[0] + w[1] * p[1] + w[2] * p[2]))) for p in row]
        for row in rgb
    ]


def _reflect101(i: int, n: int) -> int:
    if n == 1:
        return 0
    while i < 0 or i >= n:
        i = -i if i < 0 else 2 * (n - 1) - i
    return i


def laplacian(g) -> list:
    h, w = len(g), len(g[0])

    def at(y, x):
        return g[_reflect101(y, h)][_reflect101(x, w)]

    return [
        [at(y - 1, x) + at(y + 1, x) + at(y, x - 1) + at(y, x + 1) - 4 * at(y, x) for x in range(w)]
        for y in range(h)
    ]


def normalize(resp) -> list:
    flat = [v for row in resp for v in row]
    lo, hi = min(flat), max(flat)
    if lo == hi:
        return [[0] * len(row) for row in resp]
    return [[round_half_up(Fraction((v - lo) * 255, hi - lo)) for v in row] for row in resp]


def local_entropy(g, radius: int) -> list:
    """Per-pixel entropy; histogram via Counter, terms in ascending gray level."""
    h, w = len(g), len(g[0])
    out = []
    for y in range(h):
        row = []
        for x in range(w):
            hist = Counter()
            for yy in range(max(0, y - radius), min(h, y + radius + 1)):
                for xx in range(max(0, x - radius), min(w, x + radius + 1)):
                    if (yy - y) ** 2 + (xx - x) ** 2 <= radius * radius:
                        hist[g[yy][xx]] += 1
            n = sum(hist.values())
            acc = 0.0
            for _, c in sorted(hist.items()):
                p = c / n
                acc += p * math.log2(p)
            row.append(0.0 - acc)
        out.append(row)
    return out


def spatial_entropy(rgb, radius: int) -> float:
    e = local_entropy(normalize(laplacian(gray(rgb))), radius)
    flat = [v for row in e for v in row]
    return math.fsum(flat) / len(flat)


def hsv(r: int, g: int, b: int):
    """Exact hexcone HSV of an 8-bit pixel: H in degrees, S and V in [0, 1]."""
    mx, mn = max(r, g, b), min(r, g, b)
    d = mx - mn
    if d == 0:
        h = Fraction(0)
    elif mx == r:
        h = 60 * (Fraction(g - b, d) % 6)
    elif mx == g:
        h = 60 * (Fraction(b - r, d) + 2)
    else:
        h = 60 * (Fraction(r - g, d) + 4)
    s = Fraction(d, mx) if mx else Fraction(0)
    return h, s, Fraction(mx, 255)


def hsv_hist(rgb, bins=(16, 4, 4)) -> list:
    hb, sb, vb = bins
    counts = [0] * (hb * sb * vb)
    n = 0
    for row in rgb:
        for r, g, b in row:
            h, s, v = hsv(r, g, b)
            hi = min(math.floor(h / 360 * hb), hb - 1)
            si = min(math.floor(s * sb), sb - 1)
            vi = min(math.floor(v * vb), vb - 1)
            counts[(hi * sb + si) * vb + vi] += 1
            n += 1
    return [c / n for c in counts]


def cosine(a, b) -> float:
    dot = math.fsum(x * y for x, y in zip(a, b))
    na = math.sqrt(math.fsum(x * x for x in a))
    nb = math.sqrt(math.fsum(y * y for y in b))
    return dot / (na * nb)


def temporal(indices, n_frames: int, bins: int):
    """(E_t, C_t) straight from the definitions, with float positions."""
    k = len(indices)
    taus = [i / (n_frames - 1) for i in indices]
    counts = [0] * bins
    for t in taus:
        counts[min(math.floor(t * bins), bins - 1)] += 1
    if bins == 1:
        e = 1.0
    else:
        e = -math.fsum((c / k) * math.log(c / k) for c in counts if c) / math.log(bins)
    span = (max(indices) - min(indices)) / (n_frames - 1)
    return e, span


def stec(frames, indices, n_frames: int, radius=6, bins=8, hsv_bins=(16, 4, 4)) -> dict:
    """Whole-pipeline score of the sampled frames (nested-list RGB images)."""
    s = math.fsum(spatial_entropy(f, radius) for f in frames) / len(frames)
    e, c = temporal(indices, n_frames, bins)
    hists = [hsv_hist(f, hsv_bins) for f in frames]
    sims = [min(1.0, max(0.0, cosine(a, b))) for a, b in zip(hists, hists[1:])]
    r = 1.0 - math.fsum(sims) / len(sims)
    return {"S": s, "E_t": e, "C_t": c, "T": e * c, "R": r, "STEC": s * e * c * r}
