"""NumPy implementations of the enumeration kernels.

These mirror ``_kernels_c.pyx`` function for function and are used whenever
the compiled module is unavailable (or ``HYPERCODE_PURE_PYTHON`` is set).
All word arrays are uint64 in the packing of :mod:`hypercode.gf2`.
"""

from __future__ import annotations

import numpy as np

_CHUNK = 1 << 20


def _span(rows: np.ndarray) -> np.ndarray:
    out = np.zeros((1, rows.shape[1]), dtype=np.uint64)
    for r in rows:
        out = np.concatenate([out, out ^ r])
    return out


def weight_census(gen: np.ndarray, nbits: int) -> np.ndarray:
    """Histogram of Hamming weights over the span of the rows of ``gen``."""
    gen = np.ascontiguousarray(gen, dtype=np.uint64)
    k = gen.shape[0]
    counts = np.zeros(nbits + 1, dtype=np.int64)
    lo_k = min(k, 14)
    low = _span(gen[:lo_k])
    high = _span(gen[lo_k:])
    if low.shape[1] == 1:
        low = low[:, 0]
    for h in high:
        if low.ndim == 1:
            w = np.bitwise_count(low ^ h[0])
        else:
            w = np.bitwise_count(low ^ h).sum(axis=1)
        counts += np.bincount(w, minlength=nbits + 1)[: nbits + 1]
    return counts


def nearest_scan(codewords: np.ndarray, y: int) -> tuple[int, int, int]:
    """Index of the first codeword closest to ``y``, its distance, and the tie count."""
    best_d = 1 << 30
    best_i = 0
    ties = 0
    yw = np.uint64(y)
    for start in range(0, codewords.shape[0], _CHUNK):
        d = np.bitwise_count(codewords[start : start + _CHUNK] ^ yw)
        m = int(d.min())
        if m < best_d:
            best_d, best_i, ties = m, start + int(d.argmin()), int((d == m).sum())
        elif m == best_d:
            ties += int((d == m).sum())
    return best_i, best_d, ties


def nearest_table(codewords: np.ndarray, n: int):
    """:func:`nearest_scan` for every word of length ``n`` at once."""
    size = 1 << n
    M = codewords.shape[0]
    idx = np.empty(size, dtype=np.int64)
    dist = np.empty(size, dtype=np.int32)
    ties = np.empty(size, dtype=np.int32)
    step = max(1, (1 << 22) // max(M, 1))
    ys = np.arange(size, dtype=np.uint64)
    for start in range(0, size, step):
        d = np.bitwise_count(ys[start : start + step, None] ^ codewords[None, :])
        best = d.min(axis=1)
        idx[start : start + step] = d.argmin(axis=1)
        dist[start : start + step] = best
        ties[start : start + step] = (d == best[:, None]).sum(axis=1)
    return idx, dist, ties


def activity_census(nbits: int, masks: np.ndarray) -> np.ndarray:
    """Table ``T[w, a]``: number of x in {0,1}^nbits of weight w hitting exactly a masks."""
    masks = np.ascontiguousarray(masks, dtype=np.uint64)
    V = masks.shape[0]
    table = np.zeros((nbits + 1) * (V + 1), dtype=np.int64)
    total = 1 << nbits
    for start in range(0, total, _CHUNK):
        x = np.arange(start, min(total, start + _CHUNK), dtype=np.uint64)
        act = np.zeros(x.shape[0], dtype=np.int64)
        for mk in masks:
            act += (x & mk) != 0
        w = np.bitwise_count(x).astype(np.int64)
        table += np.bincount(w * (V + 1) + act, minlength=table.shape[0])
    return table.reshape(nbits + 1, V + 1)
