"""Numpy fallback for the compiled bitmap kernels (same layout and results)."""

import numpy as np

BACKEND = "python"

_CHUNK = 4096

if hasattr(np, "bitwise_count"):
    _popcount = np.bitwise_count
else:  # numpy < 2.0
    _BYTE_COUNTS = np.array([bin(b).count("1") for b in range(256)], dtype=np.uint8)

    def _popcount(words):
        as_bytes = np.ascontiguousarray(words).view(np.uint8)
        return _BYTE_COUNTS[as_bytes].reshape(*words.shape, 8).sum(axis=-1)


def build_bitmaps(indptr, indices, n_items):
    indptr = np.asarray(indptr, dtype=np.int64)
    indices = np.asarray(indices, dtype=np.int32)
    n_rows = len(indptr) - 1
    n_words = max(1, (n_rows + 63) // 64)
    out = np.zeros((n_items, n_words), dtype=np.uint64)
    rows = np.repeat(np.arange(n_rows, dtype=np.int64), np.diff(indptr))
    bits = np.left_shift(np.uint64(1), (rows & 63).astype(np.uint64))
    np.bitwise_or.at(out, (indices, rows >> 6), bits)
    return out


def count_supports(bitmaps, candidates):
    """Number of rows containing every item of each candidate row."""
    candidates = np.asarray(candidates, dtype=np.int32)
    out = np.zeros(len(candidates), dtype=np.int64)
    if candidates.ndim != 2 or candidates.shape[1] == 0:
        return out
    for start in range(0, len(candidates), _CHUNK):
        block = candidates[start:start + _CHUNK]
        acc = bitmaps[block[:, 0]].copy()
        for j in range(1, block.shape[1]):
            acc &= bitmaps[block[:, j]]
        out[start:start + len(block)] = _popcount(acc).sum(axis=1, dtype=np.int64)
    return out
