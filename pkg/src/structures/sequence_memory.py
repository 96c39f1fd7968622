# src/structures/sequence_memory.py

"""
Time-tick sequence memory.

Each frame vector is bound to the vector of its time tick and the pairs are
superposed in a BundleAccumulator. Thresholding happens only when probing,
so a stored pair can be removed exactly.
"""

import logging
from collections import Counter
from typing import Optional

from src.core.exceptions import (
    DimensionMismatchError,
    EmptyMemoryError,
    PreconditionViolationError,
)
from src.hypervector.accumulator import BundleAccumulator
from src.hypervector.hypervector import Hypervector, bind, random_hv
from src.memory.item_memory import ItemMemory
from src.utils.random_state import RngLike, make_rng

logger = logging.getLogger(__name__)


class SequenceMemory:

    def __init__(
        self,
        dimension: int,
        rng: RngLike = None,
        tie_break: Optional[Hypervector] = None,
    ):
        self.dimension = int(dimension)
        self.rng = make_rng(rng)
        self.accumulator = BundleAccumulator(self.dimension)
        self.tick_codebook = ItemMemory(self.dimension)
        self.stored_count = 0
        self._live_ticks: Counter = Counter()
        self.tie_break = tie_break if tie_break is not None else random_hv(self.dimension, self.rng)

    # ==========================================================
    # Ticks
    # ==========================================================
    def tick_vector(self, tick: int) -> Hypervector:
        """Random tick vector, created on first use and kept afterwards."""
        return self.tick_codebook.get_or_create(int(tick), self.rng)

    def _check(self, hv: Hypervector) -> None:
        if hv.dimension != self.dimension:
            raise DimensionMismatchError(self.dimension, hv.dimension)

    # ==========================================================
    # Insert / remove
    # ==========================================================
    def insert(self, tick: int, frame_hv: Hypervector) -> "SequenceMemory":
        self._check(frame_hv)
        self.accumulator.add(bind(frame_hv, self.tick_vector(tick)))
        self.stored_count += 1
        self._live_ticks[int(tick)] += 1
        logger.debug(f"Sequence insert | tick={tick} | stored={self.stored_count}")
        return self

    def remove(self, tick: int, frame_hv: Hypervector) -> "SequenceMemory":
        """
        Undo an earlier insert of the same (tick, frame_hv) pair.

        Only an empty memory or a tick with no live insert is detected;
        removing a pair that was never inserted corrupts the counters.
        """
        self._check(frame_hv)
        if self.stored_count == 0:
            raise PreconditionViolationError("Cannot remove from an empty sequence memory")
        if self._live_ticks[int(tick)] == 0:
            raise PreconditionViolationError(f"Tick {tick} has no inserted pair")

        self.accumulator.remove(bind(frame_hv, self.tick_vector(tick)))
        self.stored_count -= 1
        self._live_ticks[int(tick)] -= 1
        logger.debug(f"Sequence remove | tick={tick} | stored={self.stored_count}")
        return self

    # ==========================================================
    # Probe
    # ==========================================================
    def probe(self, tick: int) -> Hypervector:
        """Noisy frame vector stored under ``tick``; clean it with an ItemMemory."""
        if self.stored_count == 0:
            raise EmptyMemoryError("Probe on an empty sequence memory")
        memory_hv = self.accumulator.threshold(self.tie_break)
        return bind(memory_hv, self.tick_vector(tick))

    def __repr__(self) -> str:
        return (
            f"SequenceMemory(N={self.dimension}, stored={self.stored_count}, "
            f"ticks={len(self.tick_codebook)})"
        )


# ==========================================================
# Functional API
# ==========================================================
def sequence_insert(mem: SequenceMemory, tick: int, frame_hv: Hypervector) -> SequenceMemory:
    return mem.insert(tick, frame_hv)


def sequence_remove(mem: SequenceMemory, tick: int, frame_hv: Hypervector) -> SequenceMemory:
    return mem.remove(tick, frame_hv)


def sequence_probe(mem: SequenceMemory, tick: int) -> Hypervector:
    return mem.probe(tick)
