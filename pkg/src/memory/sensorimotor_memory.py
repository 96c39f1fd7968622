# src/memory/sensorimotor_memory.py

"""
Heteroassociative memory of (visual frame -> velocity) records.

A record is bind(frame_hv, velocity_hv). Querying with a frame unbinds it:
bind(record, frame_hv) = velocity_hv, which the velocity codebook cleans up.

Modes
-----
bundled : all records superposed in one BundleAccumulator; a query unbinds
          the thresholded memory, so the result is a noisy velocity whose
          distance follows the bundling capacity curve.
tabular : records kept one by one; a query tries every record and keeps the
          one whose unbinding lands closest to a codebook velocity.
"""

import logging
from typing import List, Optional, Tuple

import numpy as np

from src.config.settings import DEFAULT_MEMORY_MODE, DEFAULT_REJECT_THRESHOLD, MEMORY_MODES
from src.core.exceptions import (
    DimensionMismatchError,
    EmptyMemoryError,
    InvalidArgumentError,
)
from src.hypervector.accumulator import BundleAccumulator
from src.hypervector.hypervector import (
    Hypervector,
    bind,
    hamming_many,
    random_hv,
)
from src.memory.item_memory import ItemMemory, Label
from src.utils.random_state import RngLike, make_rng

logger = logging.getLogger(__name__)

BUNDLED = "bundled"
TABULAR = "tabular"


class SensorimotorMemory:

    def __init__(
        self,
        velocity_codebook: ItemMemory,
        mode: str = DEFAULT_MEMORY_MODE,
        rng: RngLike = None,
        tie_break: Optional[Hypervector] = None,
    ):
        if mode not in MEMORY_MODES:
            raise InvalidArgumentError(f"Unknown memory mode: {mode}")
        if len(velocity_codebook) == 0:
            raise InvalidArgumentError("Velocity codebook is empty")

        self.mode = mode
        self.velocity_codebook = velocity_codebook
        self.dimension = velocity_codebook.dimension

        self.bundled = BundleAccumulator(self.dimension)
        self.tabular: List[Hypervector] = []

        # Fixed per memory so predict stays a pure function of the contents
        if tie_break is None:
            tie_break = random_hv(self.dimension, make_rng(rng))
        self.tie_break = tie_break
        if self.tie_break.dimension != self.dimension:
            raise DimensionMismatchError(self.dimension, self.tie_break.dimension)

        self._memory_hv: Optional[Hypervector] = None

        logger.info(
            "SensorimotorMemory initialized | "
            f"mode={mode} | N={self.dimension} | "
            f"velocities={len(velocity_codebook)}"
        )

    # ==========================================================
    # Write
    # ==========================================================
    def store(self, frame_hv: Hypervector, velocity_label: Label) -> "SensorimotorMemory":
        if velocity_label not in self.velocity_codebook:
            raise InvalidArgumentError(f"Unknown velocity label: {velocity_label!r}")
        if frame_hv.dimension != self.dimension:
            raise DimensionMismatchError(self.dimension, frame_hv.dimension)

        record = bind(frame_hv, self.velocity_codebook.get(velocity_label))
        if self.mode == BUNDLED:
            self.bundled.add(record)
            self._memory_hv = None
        else:
            self.tabular.append(record)
        return self

    @property
    def stored_count(self) -> int:
        return self.bundled.total if self.mode == BUNDLED else len(self.tabular)

    def __len__(self) -> int:
        return self.stored_count

    # ==========================================================
    # Read
    # ==========================================================
    def memory_vector(self) -> Hypervector:
        """Thresholded bundled memory (bundled mode only)."""
        if self.mode != BUNDLED:
            raise InvalidArgumentError("memory_vector is only defined in bundled mode")
        if self.bundled.total == 0:
            raise EmptyMemoryError("Sensorimotor memory is empty")
        if self._memory_hv is None:
            self._memory_hv = self.bundled.threshold(self.tie_break)
        return self._memory_hv

    def unbind(self, frame_hv: Hypervector) -> Hypervector:
        """Noisy velocity vector retrieved for ``frame_hv`` (bundled mode)."""
        return bind(self.memory_vector(), frame_hv)

    def predict(self, frame_hv: Hypervector) -> Tuple[Label, float]:
        """Return (velocity label, distance to its codebook vector)."""
        if self.stored_count == 0:
            raise EmptyMemoryError("Sensorimotor memory is empty")
        if frame_hv.dimension != self.dimension:
            raise DimensionMismatchError(self.dimension, frame_hv.dimension)

        if self.mode == BUNDLED:
            return self.velocity_codebook.cleanup(self.unbind(frame_hv))
        return self._predict_tabular(frame_hv)

    def _predict_tabular(self, frame_hv: Hypervector) -> Tuple[Label, float]:
        records = np.stack([r.data for r in self.tabular])
        labels = self.velocity_codebook.labels

        # distances[r, v] = hamming(bind(record_r, frame), velocity_v)
        distances = np.empty((len(self.tabular), len(labels)))
        for v, label in enumerate(labels):
            probe = bind(frame_hv, self.velocity_codebook.get(label))
            distances[:, v] = hamming_many(probe, records, self.dimension)

        flat = int(np.argmin(distances))
        r, v = divmod(flat, len(labels))
        return labels[v], float(distances[r, v])

    def predict_or_reject(
        self,
        frame_hv: Hypervector,
        threshold: float = DEFAULT_REJECT_THRESHOLD,
    ) -> Tuple[Optional[Label], float]:
        """Like predict, but the label is None when the distance exceeds ``threshold``."""
        label, distance = self.predict(frame_hv)
        if distance > threshold:
            return None, distance
        return label, distance

    def __repr__(self) -> str:
        return (
            f"SensorimotorMemory(mode={self.mode}, N={self.dimension}, "
            f"stored={self.stored_count})"
        )


# ==========================================================
# Functional API
# ==========================================================
def store(mem: SensorimotorMemory, frame_hv: Hypervector, velocity_label: Label) -> SensorimotorMemory:
    return mem.store(frame_hv, velocity_label)


def predict(mem: SensorimotorMemory, frame_hv: Hypervector) -> Tuple[Label, float]:
    return mem.predict(frame_hv)
