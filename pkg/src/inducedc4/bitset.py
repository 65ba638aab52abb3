"""Packed-word bitset helpers.

Vertex sets and adjacency rows are stored as little-endian arrays of uint64
words: bit ``v`` of a set lives in word ``v >> 6`` at position ``v & 63``.
All helpers are shape-agnostic numpy operations; the per-pair inner loops
live in the kernel modules.
"""

from __future__ import annotations

import numpy as np

WORD_BITS = 64

# Kernels keep per-call scratch on the stack; this bounds the word count.
MAX_VERTICES = 1 << 16


def word_count(n: int) -> int:
    return (n + WORD_BITS - 1) // WORD_BITS


def empty_mask(n: int) -> np.ndarray:
    return np.zeros(word_count(n), dtype=np.uint64)


def full_mask(n: int) -> np.ndarray:
    mask = np.full(word_count(n), np.uint64(0xFFFFFFFFFFFFFFFF), dtype=np.uint64)
    tail = n & 63
    if tail and len(mask):
        mask[-1] = np.uint64((1 << tail) - 1)
    if n == 0:
        mask = np.zeros(0, dtype=np.uint64)
    return mask


def mask_from_ids(ids, n: int) -> np.ndarray:
    """Bitset with exactly the given vertex ids set."""
    mask = empty_mask(n)
    ids = np.asarray(ids, dtype=np.int64)
    if len(ids):
        np.bitwise_or.at(mask, ids >> 6, np.uint64(1) << (ids & 63).astype(np.uint64))
    return mask


def ids_from_mask(mask: np.ndarray) -> np.ndarray:
    """Sorted vertex ids of the set bits."""
    bytes_view = mask.view(np.uint8)
    bits = np.unpackbits(bytes_view, bitorder="little")
    return np.flatnonzero(bits).astype(np.int64)


def popcount(mask: np.ndarray) -> int:
    return int(np.bitwise_count(mask).sum())


def popcount_rows(rows: np.ndarray) -> np.ndarray:
    """Per-row popcount of a (k, W) word matrix."""
    return np.bitwise_count(rows).sum(axis=1, dtype=np.int64)


def test_bit(mask: np.ndarray, v: int) -> bool:
    return bool((int(mask[v >> 6]) >> (v & 63)) & 1)


def set_bit(mask: np.ndarray, v: int) -> None:
    mask[v >> 6] |= np.uint64(1 << (v & 63))


def clear_bit(mask: np.ndarray, v: int) -> None:
    mask[v >> 6] &= np.uint64(~(1 << (v & 63)) & 0xFFFFFFFFFFFFFFFF)


def mask_to_int(mask: np.ndarray) -> int:
    """Whole bitset as one Python integer (fallback kernels work on these)."""
    return int.from_bytes(mask.tobytes(), "little")


def int_to_mask(value: int, n: int) -> np.ndarray:
    nbytes = word_count(n) * 8
    raw = value.to_bytes(nbytes, "little")
    return np.frombuffer(raw, dtype=np.uint64).copy()


def extract_bits(rows: np.ndarray, row_ids, col_ids) -> np.ndarray:
    """Dense 0/1 submatrix rows[row_ids][:, col_ids] of a packed matrix."""
    row_ids = np.asarray(row_ids, dtype=np.int64)
    col_ids = np.asarray(col_ids, dtype=np.int64)
    if len(row_ids) == 0 or len(col_ids) == 0:
        return np.zeros((len(row_ids), len(col_ids)), dtype=bool)
    words = rows[np.ix_(row_ids, col_ids >> 6)]
    shifts = (col_ids & 63).astype(np.uint64)
    return ((words >> shifts[None, :]) & np.uint64(1)).astype(bool)
