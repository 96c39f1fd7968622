# src/memory/item_memory.py

import logging
from typing import Dict, Hashable, Iterable, List, Optional, Tuple

import numpy as np

from src.core.exceptions import (
    DimensionMismatchError,
    EmptyMemoryError,
    InvalidArgumentError,
)
from src.hypervector.hypervector import Hypervector, hamming_many, random_hv
from src.utils.random_state import RngLike, make_rng

logger = logging.getLogger(__name__)

Label = Hashable


class ItemMemory:
    """
    Label -> hypervector codebook with nearest-neighbor cleanup.

    Entries keep insertion order; cleanup ties resolve to the earliest entry.
    Appending is allowed (time ticks are created on first use), lookups are
    safe between appends.
    """

    def __init__(self, dimension: int):
        if int(dimension) < 1:
            raise InvalidArgumentError(f"dimension must be >= 1, got {dimension}")
        self.dimension = int(dimension)
        self._labels: List[Label] = []
        self._index: Dict[Label, int] = {}
        self._rows: List[np.ndarray] = []
        self._vectors: List[Hypervector] = []
        self._matrix: Optional[np.ndarray] = None

    # ==========================================================
    # Builders
    # ==========================================================
    @classmethod
    def random(
        cls,
        labels: Iterable[Label],
        dimension: int,
        rng: RngLike = None,
    ) -> "ItemMemory":
        """Independent random vector per label, drawn in label order."""
        rng = make_rng(rng)
        memory = cls(dimension)
        for label in labels:
            memory.add(label, random_hv(dimension, rng))
        return memory

    @classmethod
    def from_pairs(
        cls,
        pairs: Iterable[Tuple[Label, Hypervector]],
        dimension: int,
    ) -> "ItemMemory":
        memory = cls(dimension)
        for label, hv in pairs:
            memory.add(label, hv)
        return memory

    # ==========================================================
    # Entries
    # ==========================================================
    def add(self, label: Label, hv: Hypervector) -> Hypervector:
        if label in self._index:
            raise InvalidArgumentError(f"Duplicate item memory label: {label!r}")
        if hv.dimension != self.dimension:
            raise DimensionMismatchError(self.dimension, hv.dimension)

        self._index[label] = len(self._labels)
        self._labels.append(label)
        self._vectors.append(hv)
        self._rows.append(hv.data)
        self._matrix = None
        return hv

    def get(self, label: Label) -> Hypervector:
        try:
            return self._vectors[self._index[label]]
        except KeyError:
            raise InvalidArgumentError(f"Unknown item memory label: {label!r}") from None

    def get_or_create(self, label: Label, rng: RngLike) -> Hypervector:
        """Stored vector for ``label``, or a new random one drawn from ``rng``."""
        if label in self._index:
            return self.get(label)
        return self.add(label, random_hv(self.dimension, rng))

    def __contains__(self, label: object) -> bool:
        return label in self._index

    def __len__(self) -> int:
        return len(self._labels)

    @property
    def labels(self) -> List[Label]:
        return list(self._labels)

    def items(self) -> List[Tuple[Label, Hypervector]]:
        return list(zip(self._labels, self._vectors))

    def as_matrix(self) -> np.ndarray:
        if self._matrix is None:
            if not self._rows:
                raise EmptyMemoryError("Item memory is empty")
            self._matrix = np.stack(self._rows)
            self._matrix.setflags(write=False)
        return self._matrix

    # ==========================================================
    # Cleanup
    # ==========================================================
    def distances(self, query: Hypervector) -> np.ndarray:
        if not self._labels:
            raise EmptyMemoryError("Cleanup on an empty item memory")
        return hamming_many(query, self.as_matrix(), self.dimension)

    def cleanup(self, query: Hypervector) -> Tuple[Label, float]:
        """Nearest entry by normalized Hamming distance; ties -> lowest index."""
        dist = self.distances(query)
        best = int(np.argmin(dist))
        return self._labels[best], float(dist[best])

    def __repr__(self) -> str:
        return f"ItemMemory(N={self.dimension}, entries={len(self)})"


def cleanup(memory: ItemMemory, query: Hypervector) -> Tuple[Label, float]:
    return memory.cleanup(query)
