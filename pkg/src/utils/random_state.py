# src/utils/random_state.py

"""
Seeded generators.

Every random draw in the library goes through a numpy ``Generator`` built from
a 64-bit seed (PCG64). Child seeds for trials and workers are derived with
``SeedSequence`` so results do not depend on scheduling order.
"""

from typing import Optional, Union

import numpy as np

from src.config.settings import DEFAULT_SEED
from src.core.exceptions import InvalidArgumentError

RngLike = Union[None, int, np.random.Generator]


def make_rng(seed: RngLike = None) -> np.random.Generator:
    """Return a Generator; an existing Generator is passed through unchanged."""
    if isinstance(seed, np.random.Generator):
        return seed
    if seed is None:
        seed = DEFAULT_SEED
    return np.random.default_rng(int(seed) & 0xFFFFFFFFFFFFFFFF)


def require_rng(rng: RngLike) -> np.random.Generator:
    """Like make_rng, but a missing generator is an error rather than the default seed."""
    if rng is None:
        raise InvalidArgumentError("a seed or Generator is required for this draw")
    return make_rng(rng)


def derive_seed(master_seed: int, *keys: int) -> int:
    """Deterministic 64-bit child seed for (master_seed, keys...)."""
    entropy = [int(master_seed) & 0xFFFFFFFFFFFFFFFF]
    entropy.extend(int(k) & 0xFFFFFFFFFFFFFFFF for k in keys)
    state = np.random.SeedSequence(entropy).generate_state(1, dtype=np.uint64)
    return int(state[0])


def child_rng(master_seed: int, *keys: int) -> np.random.Generator:
    return np.random.default_rng(derive_seed(master_seed, *keys))


def seed_from(rng: Optional[np.random.Generator]) -> int:
    """Draw a 64-bit seed from a generator (used to hand seeds to workers)."""
    rng = make_rng(rng)
    return int(rng.integers(0, 2**63 - 1, dtype=np.int64))
