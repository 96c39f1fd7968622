# src/utils/io.py

"""
Utility functions for loading/saving data files.

Every writer creates the parent directory and converts OS failures into
OutputPathError so callers see the offending path.
"""

import json
import logging
from pathlib import Path
from typing import Any

import pandas as pd

from src.config.settings import CSV_FLOAT_FORMAT
from src.core.exceptions import OutputPathError

logger = logging.getLogger(__name__)


def _prepare_output(path: Path) -> Path:
    path = Path(path)
    try:
        path.parent.mkdir(parents=True, exist_ok=True)
    except OSError as exc:
        raise OutputPathError(path, exc.strerror or str(exc)) from exc
    if path.is_dir():
        raise OutputPathError(path, "is a directory")
    return path


def load_json(path: Path) -> Any:
    """Load data from JSON file"""
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def save_json(data: Any, path: Path) -> None:
    """Save data to JSON file"""
    path = _prepare_output(path)
    try:
        with open(path, "w", encoding="utf-8") as f:
            json.dump(data, f, ensure_ascii=False, indent=2)
    except OSError as exc:
        raise OutputPathError(path, exc.strerror or str(exc)) from exc


def read_bytes(path: Path) -> bytes:
    with open(path, "rb") as f:
        return f.read()


def write_bytes(raw: bytes, path: Path) -> None:
    path = _prepare_output(path)
    try:
        with open(path, "wb") as f:
            f.write(raw)
    except OSError as exc:
        logger.exception(f"Failed to write {path}")
        raise OutputPathError(path, exc.strerror or str(exc)) from exc


def save_csv(
    df: pd.DataFrame,
    path: Path,
    *,
    index: bool = False,
    header: bool = True,
) -> Path:
    """Write a DataFrame with fixed float rendering and '\\n' line endings."""
    path = _prepare_output(path)
    try:
        df.to_csv(
            path,
            index=index,
            header=header,
            float_format=CSV_FLOAT_FORMAT,
            lineterminator="\n",
        )
    except OSError as exc:
        logger.exception(f"Failed to write CSV {path}")
        raise OutputPathError(path, exc.strerror or str(exc)) from exc

    logger.info(f"CSV saved | rows={len(df):,} | path={path}")
    return path
