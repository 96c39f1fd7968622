# src/encoding/level_encoder.py

"""
Similarity-preserving level encoders for bounded discrete scalars
(pixel intensities, quantized velocities).

Two constructions:

- linear    : code(0) random; code(i+1) flips a fresh block of
              floor(N / (2(m-1))) positions of code(i). Distance grows
              linearly and reaches ~0.5 at the far end.
- nonlinear : code(0) random; code(i+1) flips every bit of code(i)
              independently with probability lambda (the proximity
              parameter). E[distance at offset d] = (1 - (1 - 2*lambda)^d) / 2.
"""

import logging
from pathlib import Path
from typing import List, Sequence, Tuple

import numpy as np
import pandas as pd

from src.config.settings import DEFAULT_VELOCITY_BINS, DEFAULT_VELOCITY_RANGE
from src.core.exceptions import InvalidArgumentError, LevelOutOfRangeError
from src.hypervector.hypervector import (
    Hypervector,
    flip_noise,
    pairwise_distances,
    random_hv,
    stack,
)
from src.utils.io import save_csv
from src.utils.random_state import RngLike, make_rng

logger = logging.getLogger(__name__)

LINEAR = "linear"
NONLINEAR = "nonlinear"
ENCODER_MODES = (LINEAR, NONLINEAR)


class LevelEncoder:
    """
    Ordered codebook of m hypervectors. Immutable after construction.
    """

    def __init__(
        self,
        codebook: Sequence[Hypervector],
        mode: str,
        proximity: float = None,
        block_size: int = None,
    ):
        if mode not in ENCODER_MODES:
            raise InvalidArgumentError(f"Unknown encoder mode: {mode}")
        if len(codebook) < 2:
            raise InvalidArgumentError("A level encoder needs at least 2 levels")

        self._codebook: Tuple[Hypervector, ...] = tuple(codebook)
        self._matrix = stack(self._codebook)
        self._matrix.setflags(write=False)

        self.mode = mode
        self.proximity = proximity
        self.block_size = block_size
        self.dimension = self._codebook[0].dimension
        self.levels = len(self._codebook)

        logger.info(
            "LevelEncoder built | "
            f"mode={mode} | N={self.dimension} | m={self.levels} | "
            f"lambda={proximity} | block={block_size}"
        )

    # ==========================================================
    # Lookup
    # ==========================================================
    @property
    def codebook(self) -> Tuple[Hypervector, ...]:
        return self._codebook

    @property
    def matrix(self) -> np.ndarray:
        return self._matrix

    def encode(self, value: int) -> Hypervector:
        if isinstance(value, (bool, np.bool_)) or int(value) != value:
            raise InvalidArgumentError(f"Level must be an integer, got {value!r}")
        value = int(value)
        if not 0 <= value < self.levels:
            raise LevelOutOfRangeError(value, self.levels)
        return self._codebook[value]

    # ==========================================================
    # Distance structure
    # ==========================================================
    def distance_matrix(self) -> np.ndarray:
        return pairwise_distances(self._codebook)

    def expected_distance(self, offset: int) -> float:
        """Closed-form expected distance between levels ``offset`` apart."""
        offset = abs(int(offset))
        if self.mode == LINEAR:
            return offset * self.block_size / self.dimension
        return 0.5 * (1.0 - (1.0 - 2.0 * self.proximity) ** offset)

    def __len__(self) -> int:
        return self.levels


# ==========================================================
# Builders
# ==========================================================
def _check_levels(levels: int) -> int:
    if int(levels) != levels or levels < 2:
        raise InvalidArgumentError(f"levels must be an integer >= 2, got {levels}")
    return int(levels)


def build_linear(dimension: int, levels: int, rng: RngLike = None) -> LevelEncoder:
    levels = _check_levels(levels)
    block = dimension // (2 * (levels - 1))
    if block < 1:
        raise InvalidArgumentError(
            f"dimension {dimension} too small for {levels} linear levels"
        )

    rng = make_rng(rng)
    bits = random_hv(dimension, rng).to_bits()
    codebook: List[Hypervector] = [Hypervector.from_bits(bits)]
    for i in range(levels - 1):
        bits = bits.copy()
        bits[i * block:(i + 1) * block] ^= 1
        codebook.append(Hypervector.from_bits(bits))

    return LevelEncoder(codebook, LINEAR, block_size=block)


def build_nonlinear(
    dimension: int,
    levels: int,
    proximity: float,
    rng: RngLike = None,
) -> LevelEncoder:
    levels = _check_levels(levels)
    if not 0.0 < proximity <= 0.5:
        raise InvalidArgumentError(
            f"proximity must lie in (0, 0.5], got {proximity}"
        )

    rng = make_rng(rng)
    codebook = [random_hv(dimension, rng)]
    for _ in range(levels - 1):
        codebook.append(flip_noise(codebook[-1], proximity, rng))

    return LevelEncoder(codebook, NONLINEAR, proximity=proximity)


def build_encoder(
    mode: str,
    dimension: int,
    levels: int,
    proximity: float,
    rng: RngLike = None,
) -> LevelEncoder:
    if mode == LINEAR:
        return build_linear(dimension, levels, rng)
    if mode == NONLINEAR:
        return build_nonlinear(dimension, levels, proximity, rng)
    raise InvalidArgumentError(f"Unknown encoder mode: {mode}")


def encode(encoder: LevelEncoder, value: int) -> Hypervector:
    return encoder.encode(value)


# ==========================================================
# Heatmap export
# ==========================================================
def heatmap_frame(encoder: LevelEncoder) -> pd.DataFrame:
    levels = list(range(encoder.levels))
    df = pd.DataFrame(encoder.distance_matrix(), index=levels, columns=levels)
    df.index.name = "level"
    return df


def export_heatmap_csv(encoder: LevelEncoder, path: Path) -> Path:
    return save_csv(heatmap_frame(encoder), path, index=True)


# ==========================================================
# Velocity quantization
# ==========================================================
class VelocityQuantizer:
    """
    Uniform bins over [low, high]; values outside the range are clipped.
    """

    def __init__(
        self,
        low: float = DEFAULT_VELOCITY_RANGE[0],
        high: float = DEFAULT_VELOCITY_RANGE[1],
        bins: int = DEFAULT_VELOCITY_BINS,
    ):
        if not high > low:
            raise InvalidArgumentError(f"Empty velocity range [{low}, {high}]")
        if int(bins) != bins or bins < 2:
            raise InvalidArgumentError(f"bins must be an integer >= 2, got {bins}")
        self.low = float(low)
        self.high = float(high)
        self.bins = int(bins)
        self.width = (self.high - self.low) / self.bins

    def to_level(self, value: float) -> int:
        level = int(np.floor((float(value) - self.low) / self.width))
        return min(max(level, 0), self.bins - 1)

    def to_value(self, level: int) -> float:
        if not 0 <= level < self.bins:
            raise LevelOutOfRangeError(level, self.bins)
        return self.low + (level + 0.5) * self.width

    def centers(self) -> np.ndarray:
        return self.low + (np.arange(self.bins) + 0.5) * self.width
