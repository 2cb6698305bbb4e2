# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Sliding-histogram disk entropy kernel.

Moving one pixel right, each disk row drops its trailing pixel and gains a
leading one, so a step costs O(radius) histogram updates instead of a full
O(radius^2) rescan.
"""

import numpy as np

from libc.math cimport log2
from libc.stdlib cimport free, malloc
from libc.string cimport memset


cdef inline double _row_entropy(const int* hist, int lo, int hi, const double* row) noexcept nogil:
    # bins visited in ascending order, matching the reference summation
    cdef double acc = 0.0
    cdef int b, c
    for b in range(lo, hi + 1):
        c = hist[b]
        if c:
            acc += row[c]
    return 0.0 - acc


def local_entropy_u8(const unsigned char[:, ::1] gray, int radius):
    """Per-pixel Shannon entropy (bits) of gray levels inside a disk.

    The disk is clipped to the image; no padding values are introduced.
    """
    if radius < 1:
        raise ValueError("radius must be >= 1")
    cdef Py_ssize_t h = gray.shape[0], w = gray.shape[1]
    out = np.empty((h, w), dtype=np.float64)
    if h == 0 or w == 0:
        return out
    cdef double[:, ::1] o = out

    cdef int r = radius, dy, dx, k
    cdef int nrows = 2 * r + 1
    cdef int* half = <int*> malloc(nrows * sizeof(int))
    if half == NULL:
        raise MemoryError()
    cdef int area = 0
    for dy in range(-r, r + 1):
        dx = 0
        while (dx + 1) * (dx + 1) + dy * dy <= r * r:
            dx += 1
        half[dy + r] = dx
        area += 2 * dx + 1

    # table[n][c] = (c/n) * log2(c/n) for every neighbourhood size n <= area
    cdef int stride = area + 1
    cdef double* table = <double*> malloc(stride * stride * sizeof(double))
    if table == NULL:
        free(half)
        raise MemoryError()
    cdef int n, c
    cdef double p
    for n in range(stride):
        table[n * stride] = 0.0
        for c in range(1, stride):
            if n == 0 or c > n:
                table[n * stride + c] = 0.0
            else:
                p = <double> c / <double> n
                table[n * stride + c] = p * log2(p)

    cdef int lo = 255, hi = 0, v
    cdef Py_ssize_t y, x, yy, xo, xi
    for y in range(h):
        for x in range(w):
            v = gray[y, x]
            if v < lo:
                lo = v
            if v > hi:
                hi = v

    cdef int hist[256]
    with nogil:
        for y in range(h):
            memset(hist, 0, sizeof(hist))
            n = 0
            for k in range(nrows):
                yy = y + k - r
                if yy < 0 or yy >= h:
                    continue
                for xi in range(0, min(half[k] + 1, w)):
                    hist[gray[yy, xi]] += 1
                    n += 1
            o[y, 0] = _row_entropy(hist, lo, hi, table + n * stride)

            for x in range(1, w):
                for k in range(nrows):
                    yy = y + k - r
                    if yy < 0 or yy >= h:
                        continue
                    xo = x - 1 - half[k]
                    if xo >= 0:
                        hist[gray[yy, xo]] -= 1
                        n -= 1
                    xi = x + half[k]
                    if xi < w:
                        hist[gray[yy, xi]] += 1
                        n += 1
                o[y, x] = _row_entropy(hist, lo, hi, table + n * stride)

    free(table)
    free(half)
    return out
