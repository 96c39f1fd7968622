# src/bloom/or_bundle_filter.py

"""
Bloom filter read as a VSA: sparse atomic vectors superposed by OR.

Inserting a key ORs its sparse encoding into the filter vector; a query
answers True when every hashed position is set. Bits only ever go 0 -> 1,
so there are no false negatives.

Serialized as a parameter header followed by the filter vector in the
"HDHV" container:
    k             u32
    hash seeds    2 x u32
    inserted      u64
    vector        HDHV
"""

import logging
import math
import struct
from functools import reduce
from typing import Hashable, Iterable, Tuple

import numpy as np

from src.config.settings import BLOOM_HASH_SEEDS
from src.core.exceptions import FormatError, InvalidArgumentError
from src.hypervector import vector_store
from src.hypervector.hypervector import Hypervector, check_same_dimension
from src.bloom.sparse_encoder import SparseItemEncoder

logger = logging.getLogger(__name__)

_PARAMS = struct.Struct("<IIIQ")


class OrBundleFilter:

    def __init__(
        self,
        dimension: int,
        k: int,
        hash_seeds: Tuple[int, int] = BLOOM_HASH_SEEDS,
    ):
        self.encoder = SparseItemEncoder(dimension, k, hash_seeds)
        self.dimension = self.encoder.dimension
        self.k = self.encoder.k
        self._bits = np.zeros(self.dimension, dtype=bool)
        self.inserted_count = 0

    # ==========================================================
    # Membership
    # ==========================================================
    def insert(self, key: Hashable) -> "OrBundleFilter":
        self._bits[self.encoder.positions(key)] = True
        self.inserted_count += 1
        return self

    def insert_many(self, keys: Iterable[Hashable]) -> "OrBundleFilter":
        for key in keys:
            self.insert(key)
        return self

    def query(self, key: Hashable) -> bool:
        return bool(self._bits[self.encoder.positions(key)].all())

    def __contains__(self, key: Hashable) -> bool:
        return self.query(key)

    # ==========================================================
    # Vector view
    # ==========================================================
    @property
    def vector(self) -> Hypervector:
        packed = np.packbits(self._bits.astype(np.uint8), bitorder="little")
        return Hypervector(packed, self.dimension)

    def fill_ratio(self) -> float:
        return float(self._bits.mean())

    # ==========================================================
    # Serialization
    # ==========================================================
    def to_bytes(self) -> bytes:
        header = _PARAMS.pack(self.k, *self.encoder.hash_seeds, self.inserted_count)
        return header + vector_store.to_bytes(self.vector)

    @classmethod
    def from_bytes(cls, raw: bytes) -> "OrBundleFilter":
        if len(raw) < _PARAMS.size:
            raise FormatError("Truncated filter parameter header")
        k, seed1, seed2, inserted = _PARAMS.unpack_from(raw, 0)
        hv = vector_store.from_bytes(raw[_PARAMS.size:])

        flt = cls(hv.dimension, k, (seed1, seed2))
        flt._bits = hv.to_bits().astype(bool)
        flt.inserted_count = int(inserted)
        return flt


# ==========================================================
# Functional API and analysis
# ==========================================================
def insert(flt: OrBundleFilter, key: Hashable) -> OrBundleFilter:
    return flt.insert(key)


def query(flt: OrBundleFilter, key: Hashable) -> bool:
    return flt.query(key)


def or_bundle(vectors: Iterable[Hypervector]) -> Hypervector:
    """Elementwise OR of equal-dimension vectors."""
    vectors = list(vectors)
    if not vectors:
        raise InvalidArgumentError("or_bundle needs at least one vector")
    check_same_dimension(*vectors)
    data = reduce(np.bitwise_or, (hv.data for hv in vectors))
    return Hypervector(data, vectors[0].dimension)


def expected_false_positive_rate(dimension: int, k: int, n_inserted: int) -> float:
    """(1 - e^{-kn/N})^k"""
    return (1.0 - math.exp(-k * n_inserted / dimension)) ** k


def optimal_k(dimension: int, n_inserted: int) -> int:
    if n_inserted < 1:
        raise InvalidArgumentError("n_inserted must be >= 1")
    return max(1, round(dimension / n_inserted * math.log(2)))
