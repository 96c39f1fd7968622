# src/events/event_stream.py

"""
Event-camera streams: the Event record, a synthetic moving-edge generator
and CSV import/export (columns x, y, t, polarity).
"""

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import Iterator, List, Optional, Sequence, Tuple

import numpy as np
import pandas as pd

from src.config.settings import (
    DEFAULT_EVENT_RATE,
    DEFAULT_GRID_HEIGHT,
    DEFAULT_GRID_WIDTH,
)
from src.core.exceptions import InvalidArgumentError
from src.utils.io import save_csv
from src.utils.random_state import RngLike, make_rng

logger = logging.getLogger(__name__)

EVENT_COLUMNS = ["x", "y", "t", "polarity"]

Grid = Tuple[int, int]  # (width, height)


@dataclass(frozen=True)
class Event:
    x: int
    y: int
    t: int          # microseconds
    polarity: int   # +1 or -1

    def __post_init__(self):
        if self.polarity not in (1, -1):
            raise InvalidArgumentError(f"polarity must be +1 or -1, got {self.polarity}")


def check_grid(grid: Grid) -> Grid:
    width, height = grid
    if int(width) != width or int(height) != height or width < 1 or height < 1:
        raise InvalidArgumentError(f"grid must be two positive integers, got {grid}")
    return int(width), int(height)


def validate_stream(events: Sequence[Event], grid: Grid) -> None:
    """Coordinates inside the grid and timestamps nondecreasing."""
    width, height = check_grid(grid)
    last_t = None
    for ev in events:
        if not (0 <= ev.x < width and 0 <= ev.y < height):
            raise InvalidArgumentError(f"Event outside {width}x{height} grid: {ev}")
        if last_t is not None and ev.t < last_t:
            raise InvalidArgumentError(f"Timestamps decrease at {ev}")
        last_t = ev.t


# ==========================================================
# Synthetic generator
# ==========================================================
def generate_synthetic_stream(
    velocity: float,
    duration_us: int,
    grid: Grid = (DEFAULT_GRID_WIDTH, DEFAULT_GRID_HEIGHT),
    rate: float = DEFAULT_EVENT_RATE,
    rng: RngLike = None,
    x0: Optional[float] = None,
) -> List[Event]:
    """
    Vertical edge moving horizontally at ``velocity`` pixels per millisecond.

    Every pixel on the edge fires as a Poisson process of ``rate`` events per
    second. The edge starts at ``x0`` (default: placed so it crosses the grid
    centre halfway through the stream); events that fall outside the grid are
    dropped. Positive velocity gives ON events, negative OFF, zero a random
    polarity per event.
    """
    if duration_us <= 0:
        raise InvalidArgumentError(f"duration must be positive, got {duration_us}")
    if rate <= 0:
        raise InvalidArgumentError(f"rate must be positive, got {rate}")
    width, height = check_grid(grid)
    rng = make_rng(rng)

    duration_ms = duration_us / 1000.0
    if x0 is None:
        x0 = (width - 1) / 2.0 - velocity * duration_ms / 2.0

    # superposition of `height` independent pixel processes
    mean_gap_us = 1e6 / (rate * height)
    expected = duration_us / mean_gap_us
    n_draw = int(expected + 6.0 * np.sqrt(expected) + 16)

    times = np.cumsum(rng.exponential(mean_gap_us, size=n_draw))
    while times[-1] < duration_us:
        extra = times[-1] + np.cumsum(rng.exponential(mean_gap_us, size=n_draw))
        times = np.concatenate([times, extra])
    times = times[times < duration_us]

    rows = rng.integers(0, height, size=times.size)
    if velocity > 0:
        polarity = np.ones(times.size, dtype=np.int64)
    elif velocity < 0:
        polarity = -np.ones(times.size, dtype=np.int64)
    else:
        polarity = rng.choice(np.array([-1, 1]), size=times.size)

    columns = np.floor(x0 + velocity * times / 1000.0 + 0.5).astype(np.int64)
    inside = (columns >= 0) & (columns < width)

    events = [
        Event(int(x), int(y), int(t), int(pol))
        for x, y, t, pol in zip(
            columns[inside], rows[inside], np.floor(times[inside]), polarity[inside]
        )
    ]

    logger.debug(
        f"Synthetic stream | v={velocity} | duration_us={duration_us} | "
        f"grid={width}x{height} | events={len(events)}"
    )
    return events


# ==========================================================
# Windows
# ==========================================================
def slice_windows(
    events: Sequence[Event],
    interval_us: int,
    start_us: int = 0,
    end_us: Optional[int] = None,
) -> Iterator[Tuple[int, int, List[Event]]]:
    """Consecutive [start, start + interval) windows with the events they hold."""
    if interval_us <= 0:
        raise InvalidArgumentError(f"interval must be positive, got {interval_us}")
    if end_us is None:
        end_us = (events[-1].t + 1) if events else start_us

    i = 0
    # skip events before the first window
    while i < len(events) and events[i].t < start_us:
        i += 1

    t0 = start_us
    while t0 < end_us:
        t1 = t0 + interval_us
        bucket = []
        while i < len(events) and events[i].t < t1:
            bucket.append(events[i])
            i += 1
        yield t0, t1, bucket
        t0 = t1


# ==========================================================
# CSV
# ==========================================================
def events_to_dataframe(events: Sequence[Event]) -> pd.DataFrame:
    return pd.DataFrame(
        [(e.x, e.y, e.t, e.polarity) for e in events],
        columns=EVENT_COLUMNS,
    ).astype("int64")


def write_events_csv(events: Sequence[Event], path: Path) -> Path:
    return save_csv(events_to_dataframe(events), path)


def read_events_csv(path: Path) -> List[Event]:
    df = pd.read_csv(path)
    missing = set(EVENT_COLUMNS) - set(df.columns)
    if missing:
        raise InvalidArgumentError(f"Event CSV {path} missing columns: {sorted(missing)}")
    if df[EVENT_COLUMNS].isna().any().any():
        raise InvalidArgumentError(f"Event CSV {path} has missing values")

    df = df[EVENT_COLUMNS].astype("int64")
    if not df["t"].is_monotonic_increasing:
        raise InvalidArgumentError(f"Event CSV {path} timestamps are not sorted")

    return [
        Event(int(r.x), int(r.y), int(r.t), int(r.polarity))
        for r in df.itertuples(index=False)
    ]
