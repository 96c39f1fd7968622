# tests/test_events.py

import numpy as np
import pytest

from src.core.exceptions import InvalidArgumentError
from src.events.event_stream import (
    Event,
    generate_synthetic_stream,
    read_events_csv,
    slice_windows,
    validate_stream,
    write_events_csv,
)
from src.events.time_image import count_events, events_to_frame
from src.structures.frame import Frame, read_frame_csv, write_frame_csv

SYNTHETIC_EDGE_GRID = (8, 4)
SYNTHETIC_EDGE_WINDOW = (0, 30_000)


# ============================================================
# Time-images
# ============================================================

def test_empty_window_gives_zero_frame():
    events = [Event(1, 1, 5_000, 1)]
    frame = events_to_frame(events, (10_000, 20_000), (4, 3), 26)
    assert frame == Frame.zeros(4, 3)


def test_single_busiest_pixel_reaches_top_level():
    events = [Event(2, 0, 100, 1), Event(2, 0, 200, -1), Event(0, 2, 300, 1)]
    frame = events_to_frame(events, (0, 1_000), (3, 3), 26)

    assert frame.intensities[0, 2] == 25
    assert frame.intensities[2, 0] == 12
    assert frame.intensities.sum() == 37


def test_event_order_inside_window_does_not_matter(rng):
    events = generate_synthetic_stream(0.05, 50_000, grid=(8, 6), rate=4000, rng=rng)
    shuffled = [events[i] for i in rng.permutation(len(events))]

    assert events_to_frame(events, (0, 50_000), (8, 6), 10) == \
        events_to_frame(shuffled, (0, 50_000), (8, 6), 10)


def test_translating_edge_fixture(fixtures_dir):
    events = read_events_csv(fixtures_dir / "translating_edge_events.csv")
    frame = events_to_frame(events, (0, 30_000), (6, 2), 26)

    assert frame == read_frame_csv(fixtures_dir / "translating_edge_frame.csv")


def _synthetic_edge():
    events = generate_synthetic_stream(
        0.1, 30_000, grid=SYNTHETIC_EDGE_GRID, rate=2000, rng=20240611
    )
    return events, events_to_frame(events, SYNTHETIC_EDGE_WINDOW, SYNTHETIC_EDGE_GRID, 26)


def test_synthetic_edge_matches_frozen_recording(fixtures_dir):
    events_path = fixtures_dir / "synthetic_edge_events.csv"
    frame_path = fixtures_dir / "synthetic_edge_frame.csv"
    events, frame = _synthetic_edge()

    # recorded by the first run on a checkout that lacks them, frozen after that
    if not (events_path.exists() and frame_path.exists()):
        write_events_csv(events, events_path)
        write_frame_csv(frame, frame_path)

    frozen_events = read_events_csv(events_path)
    frozen_frame = read_frame_csv(frame_path)
    assert events == frozen_events
    assert frame == frozen_frame
    assert events_to_frame(
        frozen_events, SYNTHETIC_EDGE_WINDOW, SYNTHETIC_EDGE_GRID, 26
    ) == frozen_frame


def test_counts_respect_window_bounds():
    events = [Event(0, 0, 0, 1), Event(0, 0, 999, 1), Event(0, 0, 1000, 1)]
    counts = count_events(events, (0, 1000), (1, 1))
    assert counts.tolist() == [[2]]

    with pytest.raises(InvalidArgumentError):
        count_events(events, (10, 0), (1, 1))
    with pytest.raises(InvalidArgumentError):
        events_to_frame(events, (0, 1000), (1, 1), 1)


def test_off_grid_events_rejected():
    # outside the window too: the grid check covers every event
    events = [Event(0, 0, 10, 1), Event(3, 1, 5_000, 1)]

    with pytest.raises(InvalidArgumentError):
        count_events(events, (0, 1000), (3, 3))
    with pytest.raises(InvalidArgumentError):
        events_to_frame(events, (0, 1000), (3, 3), 26)


# ============================================================
# Synthetic streams
# ============================================================

def test_stream_is_deterministic_for_a_seed():
    a = generate_synthetic_stream(0.1, 100_000, rng=5)
    b = generate_synthetic_stream(0.1, 100_000, rng=5)
    assert a == b
    assert a != generate_synthetic_stream(0.1, 100_000, rng=6)


def test_stream_is_valid_and_polarized():
    events = generate_synthetic_stream(0.2, 100_000, grid=(16, 8), rng=1)
    validate_stream(events, (16, 8))

    assert events
    assert all(e.polarity == 1 for e in events)
    assert all(e.polarity == -1 for e in generate_synthetic_stream(-0.2, 100_000, rng=1))


def test_edge_moves_in_the_direction_of_velocity():
    events = generate_synthetic_stream(0.1, 100_000, grid=(32, 4), rng=2)
    early = np.mean([e.x for e in events if e.t < 20_000])
    late = np.mean([e.x for e in events if e.t >= 80_000])

    # 0.1 px/ms over ~80 ms
    assert late - early == pytest.approx(8.0, abs=1.5)


def test_static_edge_stays_in_one_column():
    events = generate_synthetic_stream(0.0, 100_000, grid=(5, 3), rng=3)
    assert {e.x for e in events} == {2}
    assert {e.polarity for e in events} == {1, -1}


def test_doubling_the_rate_doubles_the_events():
    base = generate_synthetic_stream(0.0, 1_000_000, grid=(5, 3), rate=2000, rng=4)
    double = generate_synthetic_stream(0.0, 1_000_000, grid=(5, 3), rate=4000, rng=4)

    assert len(base) == pytest.approx(6000, rel=0.05)
    assert len(double) / len(base) == pytest.approx(2.0, rel=0.1)


def test_generator_validation():
    with pytest.raises(InvalidArgumentError):
        generate_synthetic_stream(0.1, 0)
    with pytest.raises(InvalidArgumentError):
        generate_synthetic_stream(0.1, 1000, rate=0)
    with pytest.raises(InvalidArgumentError):
        generate_synthetic_stream(0.1, 1000, grid=(0, 4))
    with pytest.raises(InvalidArgumentError):
        Event(0, 0, 0, 0)


def test_validate_stream_rejects_bad_streams():
    with pytest.raises(InvalidArgumentError):
        validate_stream([Event(4, 0, 0, 1)], (4, 4))
    with pytest.raises(InvalidArgumentError):
        validate_stream([Event(0, 0, 10, 1), Event(0, 0, 5, 1)], (4, 4))


# ============================================================
# Windows and CSV
# ============================================================

def test_slice_windows():
    events = [Event(0, 0, t, 1) for t in (0, 10, 25, 49, 50, 120)]
    windows = list(slice_windows(events, 50))

    assert [(t0, t1) for t0, t1, _ in windows] == [(0, 50), (50, 100), (100, 150)]
    assert [len(bucket) for _, _, bucket in windows] == [4, 1, 1]
    assert list(slice_windows([], 50)) == []

    with pytest.raises(InvalidArgumentError):
        list(slice_windows(events, 0))


def test_events_csv_round_trip(tmp_path):
    events = generate_synthetic_stream(-0.1, 20_000, grid=(8, 4), rng=7)
    path = write_events_csv(events, tmp_path / "events.csv")

    assert read_events_csv(path) == events


def test_events_csv_validation(tmp_path):
    missing = tmp_path / "missing.csv"
    missing.write_text("x,y,t\n0,0,0\n")
    with pytest.raises(InvalidArgumentError):
        read_events_csv(missing)

    unsorted = tmp_path / "unsorted.csv"
    unsorted.write_text("x,y,t,polarity\n0,0,10,1\n0,0,5,1\n")
    with pytest.raises(InvalidArgumentError):
        read_events_csv(unsorted)
