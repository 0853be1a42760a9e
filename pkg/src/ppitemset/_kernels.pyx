"""Compiled bitmap kernels for transaction support counting.

Rows are packed 64 per word; ``bitmaps[item, word]`` has bit ``r & 63`` of
word ``r >> 6`` set when row ``r`` contains ``item`` (0-based offsets).
"""
import numpy as np

from libc.stdint cimport int32_t, int64_t, uint64_t

cdef extern from *:
    """
    #if defined(__GNUC__) || defined(__clang__)
    #define PPI_POPCOUNT(x) __builtin_popcountll(x)
    #else
    static inline int PPI_POPCOUNT(unsigned long long x) {
        int c = 0;
        while (x) { x &= x - 1; c++; }
        return c;
    }
    #endif
    """
    int PPI_POPCOUNT(unsigned long long x) nogil

BACKEND = "cython"


def build_bitmaps(const int64_t[::1] indptr, const int32_t[::1] indices, Py_ssize_t n_items):
    cdef Py_ssize_t n_rows = indptr.shape[0] - 1
    cdef Py_ssize_t n_words = max(1, (n_rows + 63) // 64)
    out = np.zeros((n_items, n_words), dtype=np.uint64)
    cdef uint64_t[:, ::1] bm = out
    cdef Py_ssize_t r, j
    with nogil:
        for r in range(n_rows):
            for j in range(indptr[r], indptr[r + 1]):
                bm[indices[j], r >> 6] |= (<uint64_t>1) << (r & 63)
    return out


def count_supports(const uint64_t[:, ::1] bitmaps, const int32_t[:, ::1] candidates):
    """Number of rows containing every item of each candidate row."""
    cdef Py_ssize_t n_cand = candidates.shape[0]
    cdef Py_ssize_t k = candidates.shape[1]
    cdef Py_ssize_t n_words = bitmaps.shape[1]
    out = np.zeros(n_cand, dtype=np.int64)
    cdef int64_t[::1] counts = out
    cdef Py_ssize_t c, j, w
    cdef uint64_t acc
    cdef int64_t total
    if k == 0:
        return out
    with nogil:
        for c in range(n_cand):
            total = 0
            for w in range(n_words):
                acc = bitmaps[candidates[c, 0], w]
                j = 1
                while j < k and acc != 0:
                    acc = acc & bitmaps[candidates[c, j], w]
                    j += 1
                total += PPI_POPCOUNT(acc)
            counts[c] = total
    return out
