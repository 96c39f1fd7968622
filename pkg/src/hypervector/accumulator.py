# src/hypervector/accumulator.py

import logging
from typing import Optional

import numpy as np

from src.core.exceptions import (
    DimensionMismatchError,
    InvalidArgumentError,
    PreconditionViolationError,
)
from src.hypervector.hypervector import Hypervector, majority, random_hv
from src.utils.random_state import RngLike

logger = logging.getLogger(__name__)


class BundleAccumulator:
    """
    Exact carrier for a consensus sum.

    Each added vector contributes +1 at its one-positions and -1 at its
    zero-positions, so counts[i] = ones_i - zeros_i and |counts[i]| <= total.
    Removal subtracts the same contribution, which restores the prior state
    exactly. ``threshold`` applies the same majority rule as ``bundle``.

    Single writer; reads are safe between writes.
    """

    def __init__(self, dimension: int):
        dimension = int(dimension)
        if dimension < 1:
            raise InvalidArgumentError(f"dimension must be >= 1, got {dimension}")
        self.dimension = dimension
        self.counts = np.zeros(dimension, dtype=np.int64)
        self.total = 0

    # ==========================================================
    # Updates
    # ==========================================================
    def _contribution(self, hv: Hypervector) -> np.ndarray:
        if hv.dimension != self.dimension:
            raise DimensionMismatchError(self.dimension, hv.dimension)
        return 2 * hv.to_bits().astype(np.int64) - 1

    def add(self, hv: Hypervector) -> "BundleAccumulator":
        self.counts += self._contribution(hv)
        self.total += 1
        return self

    def remove(self, hv: Hypervector) -> "BundleAccumulator":
        """Undo one ``add(hv)``. Rejected when no vector is stored."""
        if self.total <= 0:
            raise PreconditionViolationError(
                "Cannot remove from an accumulator holding no vectors"
            )
        self.counts -= self._contribution(hv)
        self.total -= 1
        return self

    # ==========================================================
    # Readout
    # ==========================================================
    def ones(self) -> np.ndarray:
        """Per-position number of stored vectors holding a one."""
        return (self.counts + self.total) // 2

    def threshold(
        self,
        tie_break: Optional[Hypervector] = None,
        rng: RngLike = None,
    ) -> Hypervector:
        if self.total <= 0:
            raise InvalidArgumentError("Cannot threshold an empty accumulator")
        if tie_break is None and self.total % 2 == 0:
            tie_break = random_hv(self.dimension, rng)
        return majority(self.ones(), self.total, tie_break, self.dimension)

    # ==========================================================
    # Structure
    # ==========================================================
    def permute(self, shift: int = 1) -> "BundleAccumulator":
        """Rotate every counter: the accumulator of every stored vector rotated by ``shift``."""
        rotated = BundleAccumulator(self.dimension)
        rotated.counts = np.roll(self.counts, int(shift) % self.dimension)
        rotated.total = self.total
        return rotated

    def copy(self) -> "BundleAccumulator":
        clone = BundleAccumulator(self.dimension)
        clone.counts = self.counts.copy()
        clone.total = self.total
        return clone

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BundleAccumulator):
            return NotImplemented
        return (
            self.dimension == other.dimension
            and self.total == other.total
            and np.array_equal(self.counts, other.counts)
        )

    def __repr__(self) -> str:
        return f"BundleAccumulator(N={self.dimension}, total={self.total})"
