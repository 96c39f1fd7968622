# src/bloom/sparse_encoder.py

"""
Sparse atomic hypervectors for arbitrary keys.

Each key maps to at most k set positions by double hashing:
    pos_i = (h1 + i * h2) mod N,  i = 0..k-1
with h1, h2 two seeded MurmurHash3 values of the key bytes. h2 is forced odd
so consecutive positions differ when N is a power of two.

A str key hashes its UTF-8 text and bytes hash as given, so "a" and b"a" are
the same key. Any other key is hashed as "<type name>:<repr>", which keeps 42
apart from "42".
"""

import logging
from typing import Hashable, List, Tuple

import mmh3
import numpy as np

from src.config.settings import BLOOM_HASH_SEEDS
from src.core.exceptions import InvalidArgumentError
from src.hypervector.hypervector import Hypervector

logger = logging.getLogger(__name__)


class SparseItemEncoder:

    def __init__(
        self,
        dimension: int,
        k: int,
        hash_seeds: Tuple[int, int] = BLOOM_HASH_SEEDS,
    ):
        if int(dimension) != dimension or dimension < 1:
            raise InvalidArgumentError(f"dimension must be a positive integer, got {dimension}")
        if int(k) != k or k < 1:
            raise InvalidArgumentError(f"k must be a positive integer, got {k}")
        if len(hash_seeds) != 2:
            raise InvalidArgumentError("Double hashing needs exactly two seeds")

        self.dimension = int(dimension)
        self.k = int(k)
        self.hash_seeds = (
            int(hash_seeds[0]) & 0xFFFFFFFF,
            int(hash_seeds[1]) & 0xFFFFFFFF,
        )

    @staticmethod
    def _key_bytes(key: Hashable) -> bytes:
        if isinstance(key, bytes):
            return key
        if isinstance(key, str):
            return key.encode("utf-8")
        return f"{type(key).__name__}:{key!r}".encode("utf-8")

    def positions(self, key: Hashable) -> List[int]:
        raw = self._key_bytes(key)
        h1 = mmh3.hash(raw, self.hash_seeds[0], signed=False)
        h2 = mmh3.hash(raw, self.hash_seeds[1], signed=False) | 1
        return [(h1 + i * h2) % self.dimension for i in range(self.k)]

    def encode(self, key: Hashable) -> Hypervector:
        """Sparse vector with ones at the key's hashed positions (<= k of them)."""
        bits = np.zeros(self.dimension, dtype=np.uint8)
        bits[self.positions(key)] = 1
        return Hypervector(np.packbits(bits, bitorder="little"), self.dimension)
