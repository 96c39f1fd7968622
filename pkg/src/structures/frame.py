# src/structures/frame.py

"""
Single-channel visual frames and their bind-chain encoding.

A frame of W x H intensities becomes one hypervector:

    F = XOR over pixels (x, y) of permute(code(intensity(x, y)), y * W + x)

Rotation by the row-major pixel index marks the position, so no position
codebook is needed. Frames with W * H >= N would reuse rotations and are
rejected.
"""

import logging
from dataclasses import dataclass
from pathlib import Path

import numpy as np
import pandas as pd

from src.core.exceptions import InvalidArgumentError, LevelOutOfRangeError
from src.encoding.level_encoder import LevelEncoder
from src.hypervector.hypervector import Hypervector
from src.utils.io import save_csv

logger = logging.getLogger(__name__)


@dataclass(frozen=True, eq=False)
class Frame:
    """intensities has shape (height, width); row y, column x."""

    intensities: np.ndarray

    def __post_init__(self):
        arr = np.asarray(self.intensities)
        if arr.ndim != 2 or arr.shape[0] < 1 or arr.shape[1] < 1:
            raise InvalidArgumentError(
                f"Frame intensities must be a nonempty 2-D grid, got shape {arr.shape}"
            )
        if not np.issubdtype(arr.dtype, np.integer):
            if not np.all(np.mod(arr, 1) == 0):
                raise InvalidArgumentError("Frame intensities must be integers")
        arr = arr.astype(np.int64)
        if arr.min() < 0:
            raise InvalidArgumentError("Frame intensities must be nonnegative")
        arr.setflags(write=False)
        object.__setattr__(self, "intensities", arr)

    @property
    def height(self) -> int:
        return int(self.intensities.shape[0])

    @property
    def width(self) -> int:
        return int(self.intensities.shape[1])

    @property
    def n_pixels(self) -> int:
        return self.width * self.height

    @classmethod
    def zeros(cls, width: int, height: int) -> "Frame":
        return cls(np.zeros((height, width), dtype=np.int64))

    def with_pixel(self, x: int, y: int, value: int) -> "Frame":
        arr = self.intensities.copy()
        arr[y, x] = value
        return Frame(arr)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Frame):
            return NotImplemented
        return np.array_equal(self.intensities, other.intensities)


def pixel_index(x: int, y: int, width: int) -> int:
    return y * width + x


def encode_frame(frame: Frame, encoder: LevelEncoder) -> Hypervector:
    dimension = encoder.dimension
    if frame.n_pixels >= dimension:
        raise InvalidArgumentError(
            f"Frame has {frame.n_pixels} pixels; must be fewer than N={dimension}"
        )

    flat = frame.intensities.ravel()
    out_of_range = flat >= encoder.levels
    if out_of_range.any():
        raise LevelOutOfRangeError(int(flat[out_of_range][0]), encoder.levels)

    code_bits = np.stack([hv.to_bits() for hv in encoder.codebook])
    acc = np.zeros(dimension, dtype=np.uint8)
    for idx, level in enumerate(flat):
        np.bitwise_xor(acc, np.roll(code_bits[level], idx), out=acc)

    return Hypervector(np.packbits(acc, bitorder="little"), dimension)


# ==========================================================
# CSV ingestion
# ==========================================================
def read_frame_csv(path: Path) -> Frame:
    """Row-major integers, one frame row per CSV line, no header."""
    df = pd.read_csv(path, header=None)
    if df.isna().any().any():
        raise InvalidArgumentError(f"Frame CSV has missing values: {path}")
    return Frame(df.to_numpy())


def write_frame_csv(frame: Frame, path: Path) -> Path:
    return save_csv(pd.DataFrame(frame.intensities), path, header=False)
