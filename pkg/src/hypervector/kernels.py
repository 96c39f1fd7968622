# src/hypervector/kernels.py

"""
Bit-level kernels over packed uint8 vectors (8 elements per byte, LSB first).

All distance work in the library funnels through these functions, so they are
compiled with numba. Padding bits past the logical dimension are kept at zero
by the callers, which lets the kernels count whole bytes.
"""

import numpy as np
from numba import njit

m1 = 0x55  # 01010101
m2 = 0x33  # 00110011
m4 = 0x0F  # 00001111


@njit(cache=True)
def _popcount8(x):
    x = x - ((x >> 1) & m1)
    x = (x & m2) + ((x >> 2) & m2)
    return (x + (x >> 4)) & m4


@njit(cache=True)
def popcount(a: np.ndarray) -> int:
    total = 0
    for i in range(a.shape[0]):
        total += _popcount8(np.int64(a[i]))
    return total


@njit(cache=True)
def popcount_xor(a: np.ndarray, b: np.ndarray) -> int:
    total = 0
    for i in range(a.shape[0]):
        total += _popcount8(np.int64(a[i] ^ b[i]))
    return total


@njit(cache=True)
def popcount_xor_rows(query: np.ndarray, matrix: np.ndarray) -> np.ndarray:
    """XOR-popcount of one packed vector against every row of a packed matrix."""
    n_rows = matrix.shape[0]
    n_bytes = matrix.shape[1]
    out = np.empty(n_rows, dtype=np.int64)
    for r in range(n_rows):
        total = 0
        for i in range(n_bytes):
            total += _popcount8(np.int64(matrix[r, i] ^ query[i]))
        out[r] = total
    return out


@njit(cache=True)
def popcount_xor_pairwise(matrix: np.ndarray) -> np.ndarray:
    n_rows = matrix.shape[0]
    n_bytes = matrix.shape[1]
    out = np.zeros((n_rows, n_rows), dtype=np.int64)
    for r in range(n_rows):
        for s in range(r + 1, n_rows):
            total = 0
            for i in range(n_bytes):
                total += _popcount8(np.int64(matrix[r, i] ^ matrix[s, i]))
            out[r, s] = total
            out[s, r] = total
    return out


def tail_mask(dimension: int) -> np.uint8:
    """Mask of the valid bits in the last byte of a packed vector."""
    used = dimension % 8
    if used == 0:
        return np.uint8(0xFF)
    return np.uint8((1 << used) - 1)


def n_bytes_for(dimension: int) -> int:
    return (dimension + 7) // 8
