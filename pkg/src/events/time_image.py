# src/events/time_image.py

"""
Time-images: per-pixel event counts over a window, rescaled to intensity
levels and treated as a one-channel frame.
"""

import logging
from typing import Sequence, Tuple

import numpy as np

from src.core.exceptions import InvalidArgumentError
from src.events.event_stream import Event, Grid, check_grid
from src.structures.frame import Frame

logger = logging.getLogger(__name__)


def count_events(
    events: Sequence[Event],
    window: Tuple[int, int],
    grid: Grid,
) -> np.ndarray:
    """(height, width) counts of events with start <= t < end; every event must lie on the grid."""
    width, height = check_grid(grid)
    start, end = window
    if end < start:
        raise InvalidArgumentError(f"Window end before start: {window}")

    counts = np.zeros(width * height, dtype=np.int64)
    idx = []
    for e in events:
        if not (0 <= e.x < width and 0 <= e.y < height):
            raise InvalidArgumentError(f"Event outside {width}x{height} grid: {e}")
        if start <= e.t < end:
            idx.append(e.y * width + e.x)
    if idx:
        counts += np.bincount(np.asarray(idx, dtype=np.int64), minlength=width * height)
    return counts.reshape(height, width)


def events_to_frame(
    events: Sequence[Event],
    window: Tuple[int, int],
    grid: Grid,
    levels: int,
) -> Frame:
    """
    Count events per pixel in the window and map count c to
    floor(c * (levels - 1) / max_count). An empty window gives an all-zero
    frame. Counts only, so event order inside the window does not matter.
    """
    if int(levels) != levels or levels < 2:
        raise InvalidArgumentError(f"levels must be an integer >= 2, got {levels}")

    counts = count_events(events, window, grid)
    peak = int(counts.max())
    if peak == 0:
        return Frame(counts)
    return Frame((counts * (int(levels) - 1)) // peak)
