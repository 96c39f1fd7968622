# src/structures/composites.py

"""
Set and sequence encodings built from the core operations.

- permutation sequence : majority of permute(item_i, start + i)
- bind-chain set       : XOR of all members; order-free, but equal or similar
                         members cancel each other
"""

import logging
from typing import Optional, Sequence, Tuple

from src.core.exceptions import InvalidArgumentError
from src.hypervector.accumulator import BundleAccumulator
from src.hypervector.hypervector import (
    Hypervector,
    bind_all,
    check_same_dimension,
    hamming,
    permute,
)
from src.memory.item_memory import ItemMemory, Label
from src.utils.random_state import RngLike

logger = logging.getLogger(__name__)


# ==========================================================
# Ordered sequences
# ==========================================================
def perm_sequence_accumulator(
    items: Sequence[Hypervector],
    start: int = 0,
) -> BundleAccumulator:
    if not items:
        raise InvalidArgumentError("A sequence needs at least one item")
    dimension = check_same_dimension(*items)
    acc = BundleAccumulator(dimension)
    for i, item in enumerate(items):
        acc.add(permute(item, start + i))
    return acc


def encode_perm_sequence(
    items: Sequence[Hypervector],
    tie_break: Optional[Hypervector] = None,
    rng: RngLike = None,
    start: int = 0,
) -> Hypervector:
    """Position i is encoded by an i-fold rotation (offset by ``start``)."""
    return perm_sequence_accumulator(items, start).threshold(tie_break, rng)


def probe_perm_sequence(
    sequence_hv: Hypervector,
    position: int,
    memory: ItemMemory,
) -> Tuple[Label, float]:
    """Undo the rotation of ``position`` and clean up the result."""
    return memory.cleanup(permute(sequence_hv, -position))


def best_alignment_shift(
    reference_hv: Hypervector,
    candidate_hv: Hypervector,
    max_shift: int,
) -> Tuple[int, float]:
    """
    Rotation of ``candidate_hv`` within [-max_shift, max_shift] closest to
    ``reference_hv``. One rotation moves every element of an encoded sequence,
    so the best shift is the offset between the two sequences.
    Ties go to the smaller |shift|, negative first.
    """
    if max_shift < 0:
        raise InvalidArgumentError(f"max_shift must be >= 0, got {max_shift}")
    check_same_dimension(reference_hv, candidate_hv)

    best_shift, best_distance = 0, hamming(reference_hv, candidate_hv)
    for magnitude in range(1, max_shift + 1):
        for shift in (-magnitude, magnitude):
            distance = hamming(reference_hv, permute(candidate_hv, shift))
            if distance < best_distance:
                best_shift, best_distance = shift, distance
    return best_shift, best_distance


# ==========================================================
# Sets
# ==========================================================
def encode_set_bindchain(items: Sequence[Hypervector]) -> Hypervector:
    if not items:
        raise InvalidArgumentError("A set needs at least one member")
    return bind_all(items)
