# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled enumeration kernels; see ``_kernels_py`` for the reference versions."""

import numpy as np

from libc.stdint cimport int32_t, int64_t, uint64_t

cdef extern from *:
    """
    static inline int hc_popcount(unsigned long long x) { return __builtin_popcountll(x); }
    static inline int hc_ctz(unsigned long long x) { return __builtin_ctzll(x); }
    """
    int hc_popcount(unsigned long long x) nogil
    int hc_ctz(unsigned long long x) nogil


def weight_census(gen, int nbits):
    """Gray-code walk over the row span of ``gen`` counting Hamming weights."""
    cdef const uint64_t[:, ::1] g = np.ascontiguousarray(gen, dtype=np.uint64)
    cdef Py_ssize_t k = g.shape[0], W = g.shape[1]
    if k > 62:
        raise ValueError("too many generator rows")
    counts = np.zeros(nbits + 1, dtype=np.int64)
    cdef int64_t[::1] c = counts
    cur_arr = np.zeros(W, dtype=np.uint64)
    cdef uint64_t[::1] cur = cur_arr
    cdef uint64_t i, total = (<uint64_t>1) << k
    cdef uint64_t acc = 0
    cdef Py_ssize_t idx, j
    cdef int w
    c[0] = 1
    with nogil:
        if W == 1:
            for i in range(1, total):
                acc ^= g[hc_ctz(i), 0]
                c[hc_popcount(acc)] += 1
        else:
            for i in range(1, total):
                idx = hc_ctz(i)
                w = 0
                for j in range(W):
                    cur[j] ^= g[idx, j]
                    w += hc_popcount(cur[j])
                c[w] += 1
    return counts


def nearest_scan(codewords, unsigned long long y):
    cdef const uint64_t[::1] cw = np.ascontiguousarray(codewords, dtype=np.uint64)
    cdef Py_ssize_t M = cw.shape[0], i, best_i = 0
    cdef int d, best = 1 << 30
    cdef long long ties = 0
    with nogil:
        for i in range(M):
            d = hc_popcount(cw[i] ^ y)
            if d < best:
                best = d
                best_i = i
                ties = 1
            elif d == best:
                ties += 1
    return int(best_i), int(best), int(ties)


def nearest_table(codewords, int n):
    cdef const uint64_t[::1] cw = np.ascontiguousarray(codewords, dtype=np.uint64)
    cdef Py_ssize_t M = cw.shape[0], i, best_i
    cdef uint64_t y, size = (<uint64_t>1) << n
    idx_arr = np.empty(size, dtype=np.int64)
    dist_arr = np.empty(size, dtype=np.int32)
    ties_arr = np.empty(size, dtype=np.int32)
    cdef int64_t[::1] idx = idx_arr
    cdef int32_t[::1] dist = dist_arr
    cdef int32_t[::1] ties = ties_arr
    cdef int d, best, nt
    with nogil:
        for y in range(size):
            best = 1 << 30
            best_i = 0
            nt = 0
            for i in range(M):
                d = hc_popcount(cw[i] ^ y)
                if d < best:
                    best = d
                    best_i = i
                    nt = 1
                elif d == best:
                    nt += 1
            idx[y] = best_i
            dist[y] = best
            ties[y] = nt
    return idx_arr, dist_arr, ties_arr


def activity_census(int nbits, masks):
    cdef const uint64_t[::1] mk = np.ascontiguousarray(masks, dtype=np.uint64)
    cdef Py_ssize_t V = mk.shape[0], v
    table = np.zeros((nbits + 1, V + 1), dtype=np.int64)
    cdef int64_t[:, ::1] tab = table
    cdef uint64_t x, total = (<uint64_t>1) << nbits
    cdef int a
    with nogil:
        for x in range(total):
            a = 0
            for v in range(V):
                if x & mk[v]:
                    a += 1
            tab[hc_popcount(x), a] += 1
    return table
