# src/memory/model_store.py

"""
ModelStore – Persistence layer for sensorimotor memories

Container layout (little-endian, format version 1):

    magic           4s   b"HDAM"
    version         u8
    mode            u8   0 = bundled, 1 = tabular
    dimension       u32
    codebook size   u32
    per entry:
        label kind  u8   0 = int64, 1 = utf-8 string
        label       i64 | (u16 length + bytes)
        vector      ceil(N / 8) packed bytes
    tie_break       ceil(N / 8) packed bytes
    bundled:
        total       u32
        counts      N x i32
    tabular:
        records     u32
        per record  ceil(N / 8) packed bytes
"""

import logging
import struct
from pathlib import Path
from typing import List

import numpy as np

from src.config.settings import AM_FORMAT_VERSION, AM_MAGIC
from src.core.exceptions import FormatError, InvalidArgumentError
from src.hypervector.hypervector import Hypervector
from src.hypervector.kernels import n_bytes_for
from src.memory.item_memory import ItemMemory, Label
from src.memory.sensorimotor_memory import BUNDLED, TABULAR, SensorimotorMemory
from src.utils.io import read_bytes, write_bytes

logger = logging.getLogger(__name__)

_MODE_CODES = {BUNDLED: 0, TABULAR: 1}
_MODE_NAMES = {code: name for name, code in _MODE_CODES.items()}

_HEADER = struct.Struct("<4sBBII")
_U8 = struct.Struct("<B")
_U16 = struct.Struct("<H")
_U32 = struct.Struct("<I")
_I64 = struct.Struct("<q")

LABEL_INT = 0
LABEL_STR = 1


# =================================================
# ENCODE
# =================================================

def _encode_label(label: Label) -> bytes:
    if isinstance(label, (int, np.integer)) and not isinstance(label, bool):
        return _U8.pack(LABEL_INT) + _I64.pack(int(label))
    if isinstance(label, str):
        raw = label.encode("utf-8")
        if len(raw) > 0xFFFF:
            raise InvalidArgumentError("Label longer than 65535 bytes")
        return _U8.pack(LABEL_STR) + _U16.pack(len(raw)) + raw
    raise InvalidArgumentError(
        f"Only int and str labels can be persisted, got {type(label).__name__}"
    )


def to_bytes(mem: SensorimotorMemory) -> bytes:
    codebook = mem.velocity_codebook
    parts: List[bytes] = [
        _HEADER.pack(
            AM_MAGIC,
            AM_FORMAT_VERSION,
            _MODE_CODES[mem.mode],
            mem.dimension,
            len(codebook),
        )
    ]

    for label, hv in codebook.items():
        parts.append(_encode_label(label))
        parts.append(hv.data.tobytes())

    parts.append(mem.tie_break.data.tobytes())

    if mem.mode == BUNDLED:
        counts = mem.bundled.counts
        if np.abs(counts).max(initial=0) > np.iinfo(np.int32).max:
            raise InvalidArgumentError("Accumulator counters exceed 32-bit range")
        parts.append(_U32.pack(mem.bundled.total))
        parts.append(counts.astype("<i4").tobytes())
    else:
        parts.append(_U32.pack(len(mem.tabular)))
        parts.extend(record.data.tobytes() for record in mem.tabular)

    return b"".join(parts)


# =================================================
# DECODE
# =================================================

class _Reader:
    def __init__(self, raw: bytes):
        self.raw = raw
        self.offset = 0

    def take(self, size: int) -> bytes:
        end = self.offset + size
        if end > len(self.raw):
            raise FormatError(
                f"Truncated model container at byte {self.offset} "
                f"(need {size}, have {len(self.raw) - self.offset})"
            )
        chunk = self.raw[self.offset:end]
        self.offset = end
        return chunk

    def unpack(self, fmt: struct.Struct):
        return fmt.unpack(self.take(fmt.size))

    def vector(self, dimension: int) -> Hypervector:
        data = np.frombuffer(self.take(n_bytes_for(dimension)), dtype=np.uint8)
        return Hypervector(data, dimension)


def _decode_label(reader: _Reader) -> Label:
    (kind,) = reader.unpack(_U8)
    if kind == LABEL_INT:
        return reader.unpack(_I64)[0]
    if kind == LABEL_STR:
        (length,) = reader.unpack(_U16)
        try:
            return reader.take(length).decode("utf-8")
        except UnicodeDecodeError as e:
            raise FormatError(f"Label is not valid UTF-8: {e}") from e
    raise FormatError(f"Unknown label kind: {kind}")


def from_bytes(raw: bytes) -> SensorimotorMemory:
    reader = _Reader(raw)
    magic, version, mode_code, dimension, n_entries = reader.unpack(_HEADER)

    _validate_header(magic, version, mode_code, dimension)

    codebook = ItemMemory(dimension)
    for _ in range(n_entries):
        label = _decode_label(reader)
        if label in codebook:
            raise FormatError(f"Duplicate label in model container: {label!r}")
        codebook.add(label, reader.vector(dimension))

    tie_break = reader.vector(dimension)
    mem = SensorimotorMemory(codebook, mode=_MODE_NAMES[mode_code], tie_break=tie_break)

    if mem.mode == BUNDLED:
        (total,) = reader.unpack(_U32)
        counts = np.frombuffer(reader.take(4 * dimension), dtype="<i4").astype(np.int64)
        if np.abs(counts).max(initial=0) > total or np.any((counts + total) % 2):
            raise FormatError("Accumulator counters inconsistent with stored total")
        mem.bundled.counts = counts
        mem.bundled.total = total
    else:
        (n_records,) = reader.unpack(_U32)
        mem.tabular = [reader.vector(dimension) for _ in range(n_records)]

    if reader.offset != len(raw):
        raise FormatError(f"{len(raw) - reader.offset} trailing bytes in model container")

    return mem


# =================================================
# VALIDATION
# =================================================

def _validate_header(magic: bytes, version: int, mode_code: int, dimension: int) -> None:
    if magic != AM_MAGIC:
        raise FormatError(f"Bad model magic: {magic!r}")
    if version != AM_FORMAT_VERSION:
        raise FormatError(
            f"Model format version mismatch: expected={AM_FORMAT_VERSION}, got={version}"
        )
    if mode_code not in _MODE_NAMES:
        raise FormatError(f"Unknown memory mode code: {mode_code}")
    if dimension < 1:
        raise FormatError("Model dimension must be >= 1")


# =================================================
# SAVE / LOAD
# =================================================

def save_sensorimotor_memory(mem: SensorimotorMemory, path: Path) -> None:
    """
    Save a sensorimotor memory to disk.
    """
    path = Path(path)
    write_bytes(to_bytes(mem), path)

    logger.info(
        "Sensorimotor memory saved | "
        f"mode={mem.mode} | N={mem.dimension} | "
        f"velocities={len(mem.velocity_codebook)} | "
        f"stored={mem.stored_count} | path={path}"
    )


def load_sensorimotor_memory(path: Path) -> SensorimotorMemory:
    path = Path(path)
    if not path.exists():
        raise FileNotFoundError(f"Model file not found: {path}")

    try:
        mem = from_bytes(read_bytes(path))
    except FormatError:
        logger.exception(f"Failed to load sensorimotor memory from {path}")
        raise

    logger.info(
        "Sensorimotor memory loaded | "
        f"mode={mem.mode} | N={mem.dimension} | "
        f"velocities={len(mem.velocity_codebook)} | "
        f"stored={mem.stored_count} | path={path}"
    )
    return mem
