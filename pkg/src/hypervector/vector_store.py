# src/hypervector/vector_store.py

"""
Binary container for a single hypervector.

Layout (little-endian):
    magic      4 bytes  b"HDHV"
    version    1 byte
    dimension  uint32
    payload    ceil(N / 8) bytes, element j in byte j // 8 at bit j % 8
"""

import logging
import struct
from pathlib import Path
from typing import Tuple

import numpy as np

from src.config.settings import HV_FORMAT_VERSION, HV_MAGIC
from src.core.exceptions import FormatError
from src.hypervector.hypervector import Hypervector
from src.hypervector.kernels import n_bytes_for, tail_mask
from src.utils.io import write_bytes, read_bytes

logger = logging.getLogger(__name__)

_HEADER = struct.Struct("<4sBI")


def to_bytes(hv: Hypervector) -> bytes:
    return _HEADER.pack(HV_MAGIC, HV_FORMAT_VERSION, hv.dimension) + hv.data.tobytes()


def from_buffer(raw: bytes, offset: int = 0) -> Tuple[Hypervector, int]:
    """Decode one vector starting at ``offset``; returns (vector, next offset)."""
    if len(raw) - offset < _HEADER.size:
        raise FormatError("Truncated hypervector header")

    magic, version, dimension = _HEADER.unpack_from(raw, offset)
    if magic != HV_MAGIC:
        raise FormatError(f"Bad hypervector magic: {magic!r}")
    if version != HV_FORMAT_VERSION:
        raise FormatError(f"Unsupported hypervector format version: {version}")
    if dimension < 1:
        raise FormatError("Hypervector dimension must be >= 1")

    start = offset + _HEADER.size
    end = start + n_bytes_for(dimension)
    if len(raw) < end:
        raise FormatError(
            f"Truncated hypervector payload: need {end - start} bytes, "
            f"have {len(raw) - start}"
        )

    data = np.frombuffer(raw, dtype=np.uint8, count=end - start, offset=start)
    if data[-1] & ~tail_mask(dimension) & 0xFF:
        raise FormatError("Nonzero padding bits in hypervector payload")

    return Hypervector(data, dimension), end


def from_bytes(raw: bytes) -> Hypervector:
    hv, end = from_buffer(raw)
    if end != len(raw):
        raise FormatError(f"{len(raw) - end} trailing bytes after hypervector")
    return hv


def save_hypervector(hv: Hypervector, path: Path) -> None:
    write_bytes(to_bytes(hv), path)
    logger.info(f"Hypervector saved | N={hv.dimension} | path={path}")


def load_hypervector(path: Path) -> Hypervector:
    hv = from_bytes(read_bytes(path))
    logger.info(f"Hypervector loaded | N={hv.dimension} | path={path}")
    return hv
