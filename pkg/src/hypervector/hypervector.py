# src/hypervector/hypervector.py

"""
Dense binary hypervectors and the three VSA operations.

Storage
-------
N binary elements packed 8 per byte: element j lives in byte j // 8 at bit
j % 8 (least-significant first). Trailing bits of the last byte are always
zero and never counted by the distance.

Operations
----------
- bind      : elementwise XOR
- bundle    : elementwise majority, exact ties resolved from a tie_break vector
- permute   : cyclic rotation, result[(i + shift) mod N] = a[i]
- hamming   : normalized Hamming distance
"""

from __future__ import annotations

import logging
from typing import Iterable, List, Optional, Sequence

import numpy as np

from src.core.exceptions import DimensionMismatchError, InvalidArgumentError
from src.hypervector.kernels import (
    n_bytes_for,
    popcount,
    popcount_xor,
    popcount_xor_pairwise,
    popcount_xor_rows,
    tail_mask,
)
from src.utils.random_state import RngLike, require_rng

logger = logging.getLogger(__name__)


class Hypervector:
    """
    Immutable dense binary vector.

    Attributes
    ----------
    dimension : int
        Number of binary elements N.
    data : np.ndarray
        Read-only packed uint8 array of length ceil(N / 8).
    """

    __slots__ = ("_data", "_dimension")

    def __init__(self, data: np.ndarray, dimension: int):
        dimension = int(dimension)
        if dimension < 1:
            raise InvalidArgumentError(f"dimension must be >= 1, got {dimension}")

        data = np.asarray(data)
        if data.dtype != np.uint8 or data.shape != (n_bytes_for(dimension),):
            raise InvalidArgumentError(
                f"Packed data must be uint8 of shape ({n_bytes_for(dimension)},), "
                f"got {data.dtype} {data.shape}"
            )

        data = data.copy()
        data[-1] &= tail_mask(dimension)
        data.setflags(write=False)

        self._data = data
        self._dimension = dimension

    # ------------------------------------------------------------------
    # Accessors
    # ------------------------------------------------------------------

    @property
    def dimension(self) -> int:
        return self._dimension

    @property
    def data(self) -> np.ndarray:
        return self._data

    def to_bits(self) -> np.ndarray:
        """Unpacked 0/1 array of length N."""
        return np.unpackbits(self._data, count=self._dimension, bitorder="little")

    @classmethod
    def from_bits(cls, bits: Sequence[int] | np.ndarray) -> "Hypervector":
        bits = np.asarray(bits)
        if bits.ndim != 1 or bits.size == 0:
            raise InvalidArgumentError("bits must be a nonempty 1-D sequence")
        if not np.isin(bits, (0, 1)).all():
            raise InvalidArgumentError("every element must be 0 or 1")
        packed = np.packbits(bits.astype(np.uint8), bitorder="little")
        return cls(packed, bits.size)

    def popcount(self) -> int:
        return int(popcount(self._data))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypervector):
            return NotImplemented
        return (
            self._dimension == other._dimension
            and np.array_equal(self._data, other._data)
        )

    def __hash__(self) -> int:
        return hash((self._dimension, self._data.tobytes()))

    def __repr__(self) -> str:
        return f"Hypervector(N={self._dimension}, ones={self.popcount()})"


# ======================================================================
# Validation helpers
# ======================================================================

def check_same_dimension(*vectors: Hypervector) -> int:
    dimension = vectors[0].dimension
    for hv in vectors[1:]:
        if hv.dimension != dimension:
            raise DimensionMismatchError(dimension, hv.dimension)
    return dimension


def _check_dimension(dimension: int) -> int:
    if isinstance(dimension, bool) or int(dimension) != dimension or dimension < 1:
        raise InvalidArgumentError(f"dimension must be a positive integer, got {dimension}")
    return int(dimension)


# ======================================================================
# Constructors
# ======================================================================

def random_hv(dimension: int, rng: RngLike) -> Hypervector:
    """Each bit independently 0 or 1 with probability 1/2."""
    dimension = _check_dimension(dimension)
    rng = require_rng(rng)
    data = rng.integers(0, 256, size=n_bytes_for(dimension), dtype=np.uint8)
    return Hypervector(data, dimension)


def zeros(dimension: int) -> Hypervector:
    dimension = _check_dimension(dimension)
    return Hypervector(np.zeros(n_bytes_for(dimension), dtype=np.uint8), dimension)


def complement(a: Hypervector) -> Hypervector:
    return Hypervector(np.bitwise_not(a.data), a.dimension)


# ======================================================================
# VSA operations
# ======================================================================

def bind(a: Hypervector, b: Hypervector) -> Hypervector:
    check_same_dimension(a, b)
    return Hypervector(np.bitwise_xor(a.data, b.data), a.dimension)


def bind_all(vectors: Iterable[Hypervector]) -> Hypervector:
    """XOR chain over a nonempty iterable."""
    vectors = list(vectors)
    if not vectors:
        raise InvalidArgumentError("bind_all needs at least one vector")
    check_same_dimension(*vectors)
    acc = vectors[0].data.copy()
    for hv in vectors[1:]:
        np.bitwise_xor(acc, hv.data, out=acc)
    return Hypervector(acc, vectors[0].dimension)


def permute(a: Hypervector, shift: int = 1) -> Hypervector:
    """Cyclic rotation by ``shift`` (taken modulo N); permute(., -shift) inverts it."""
    shift = int(shift) % a.dimension
    if shift == 0:
        return a
    bits = np.roll(a.to_bits(), shift)
    return Hypervector(np.packbits(bits, bitorder="little"), a.dimension)


def majority(
    ones: np.ndarray,
    count: int,
    tie_break: Optional[Hypervector],
    dimension: int,
) -> Hypervector:
    """
    Threshold per-position one-counts of ``count`` vectors.

    1 where ones > count / 2, 0 where ones < count / 2, tie_break elsewhere.
    """
    doubled = 2 * ones.astype(np.int64)
    bits = (doubled > count).astype(np.uint8)
    ties = doubled == count
    if ties.any():
        if tie_break is None:
            raise InvalidArgumentError("exact ties present but no tie_break vector given")
        if tie_break.dimension != dimension:
            raise DimensionMismatchError(dimension, tie_break.dimension)
        bits[ties] = tie_break.to_bits()[ties]
    return Hypervector(np.packbits(bits, bitorder="little"), dimension)


def bundle(
    vectors: Sequence[Hypervector],
    tie_break: Optional[Hypervector] = None,
    rng: RngLike = None,
) -> Hypervector:
    """
    Majority-rule bundle.

    ``tie_break`` decides positions where exactly half of an even-length list
    holds a one. When it is omitted for an even-length list, one is drawn from
    ``rng``, and leaving out both is an error.
    """
    vectors = list(vectors)
    if not vectors:
        raise InvalidArgumentError("bundle needs a nonempty list of vectors")
    dimension = check_same_dimension(*vectors)
    if tie_break is not None:
        check_same_dimension(vectors[0], tie_break)
    elif len(vectors) % 2 == 0:
        tie_break = random_hv(dimension, rng)

    bits = np.stack([hv.to_bits() for hv in vectors])
    ones = bits.sum(axis=0, dtype=np.int64)
    return majority(ones, len(vectors), tie_break, dimension)


def flip_noise(a: Hypervector, p: float, rng: RngLike) -> Hypervector:
    """Flip each bit independently with probability p."""
    if not 0.0 <= p <= 1.0:
        raise InvalidArgumentError(f"flip probability must lie in [0, 1], got {p}")
    rng = require_rng(rng)
    if p == 0.0:
        return a
    flips = (rng.random(a.dimension) < p).astype(np.uint8)
    mask = np.packbits(flips, bitorder="little")
    return Hypervector(np.bitwise_xor(a.data, mask), a.dimension)


# ======================================================================
# Similarity
# ======================================================================

def hamming(a: Hypervector, b: Hypervector) -> float:
    """Normalized Hamming distance: (sum_i a_i XOR b_i) / N."""
    check_same_dimension(a, b)
    return popcount_xor(a.data, b.data) / a.dimension


def stack(vectors: Sequence[Hypervector]) -> np.ndarray:
    """Packed (len, ceil(N/8)) matrix of equal-dimension vectors."""
    if not vectors:
        raise InvalidArgumentError("cannot stack an empty list")
    check_same_dimension(*vectors)
    return np.stack([hv.data for hv in vectors])


def hamming_many(query: Hypervector, matrix: np.ndarray, dimension: int) -> np.ndarray:
    """Normalized distances from ``query`` to every row of a packed matrix."""
    if query.dimension != dimension:
        raise DimensionMismatchError(dimension, query.dimension)
    return popcount_xor_rows(query.data, matrix) / dimension


def pairwise_distances(vectors: Sequence[Hypervector]) -> np.ndarray:
    matrix = stack(vectors)
    return popcount_xor_pairwise(matrix) / vectors[0].dimension


__all__: List[str] = [
    "Hypervector",
    "bind",
    "bind_all",
    "bundle",
    "check_same_dimension",
    "complement",
    "flip_noise",
    "hamming",
    "hamming_many",
    "majority",
    "pairwise_distances",
    "permute",
    "random_hv",
    "stack",
    "zeros",
]
