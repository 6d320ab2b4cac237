"""Packed bit-row helpers shared by the group and graph machinery.

A bit-row set over v items is a numpy array of shape (..., W) with
W = ceil(v/64) little-endian uint64 words; bit j of row word j//64 is
item j.  All adjacency and relation matrices in this package use this
layout, and the hot loops are word-wise and/or/popcount operations.
"""

from __future__ import annotations

import numpy as np

U64 = np.dtype("<u8")


def word_count(v: int) -> int:
    return (v + 63) >> 6


def pad_mask(v: int) -> np.ndarray:
    """All-ones row over v items (padding bits clear)."""
    w = word_count(v)
    m = np.full(w, ~np.uint64(0), dtype=U64)
    tail = v & 63
    if tail:
        m[-1] = np.uint64((1 << tail) - 1)
    return m


def zero_rows(rows: int, v: int) -> np.ndarray:
    return np.zeros((rows, word_count(v)), dtype=U64)


def pack_bool(mat: np.ndarray, v: int | None = None) -> np.ndarray:
    """Pack a (..., v) boolean array into (..., W) uint64 rows."""
    if v is None:
        v = mat.shape[-1]
    packed = np.packbits(mat, axis=-1, bitorder="little")
    w = word_count(v)
    want = w * 8
    if packed.shape[-1] != want:
        pad = np.zeros(mat.shape[:-1] + (want - packed.shape[-1],), dtype=np.uint8)
        packed = np.concatenate([packed, pad], axis=-1)
    return packed.view(U64)


def unpack_rows(rows: np.ndarray, v: int) -> np.ndarray:
    """Inverse of pack_bool: (..., W) uint64 -> (..., v) bool."""
    bytes_ = rows.view(np.uint8)
    bits = np.unpackbits(bytes_, axis=-1, bitorder="little")
    return bits[..., :v].astype(bool)


def indices(row: np.ndarray, v: int) -> np.ndarray:
    """Set-bit positions of a single row."""
    return np.nonzero(unpack_rows(row, v))[0]


def popcount(rows: np.ndarray) -> np.ndarray:
    """Per-row number of set bits; scalar for a single row."""
    return np.bitwise_count(rows).sum(axis=-1, dtype=np.int64)


def get_bit(row: np.ndarray, j: int) -> bool:
    return bool((row[j >> 6] >> np.uint64(j & 63)) & np.uint64(1))


def set_bit(row: np.ndarray, j: int) -> None:
    row[j >> 6] |= np.uint64(1 << (j & 63))


def rows_from_pairs(v: int, i: np.ndarray, j: np.ndarray, block: int = 1024) -> np.ndarray:
    """Symmetric bit-row matrix with bits (i, j) and (j, i) set.

    Pair arrays may contain duplicates; loops (i == j) are rejected.
    """
    i = np.asarray(i, dtype=np.int64)
    j = np.asarray(j, dtype=np.int64)
    if i.size and (i == j).any():
        raise ValueError("loops are not representable")
    src = np.concatenate([i, j])
    dst = np.concatenate([j, i])
    order = np.argsort(src, kind="stable")
    src = src[order]
    dst = dst[order]
    starts = np.searchsorted(src, np.arange(v + 1))
    out = zero_rows(v, v)
    buf = np.zeros((block, v), dtype=bool)
    for lo in range(0, v, block):
        hi = min(lo + block, v)
        buf[: hi - lo] = False
        for r in range(lo, hi):
            cols = dst[starts[r]:starts[r + 1]]
            if cols.size:
                buf[r - lo, cols] = True
        out[lo:hi] = pack_bool(buf[: hi - lo], v)
    return out


def transpose(rows: np.ndarray, v: int, block: int = 4096) -> np.ndarray:
    """Transpose of a (v, W) bit matrix, column-chunked to bound memory."""
    out = zero_rows(v, v)
    for lo in range(0, v, block):
        hi = min(lo + block, v)
        wlo, whi = lo >> 6, (hi + 63) >> 6
        chunk = unpack_rows(rows[:, wlo:whi], min(whi * 64, v) - wlo * 64)
        cols = chunk[:, lo - wlo * 64 : hi - wlo * 64]
        out[lo:hi] = pack_bool(np.ascontiguousarray(cols.T), v)
    return out
