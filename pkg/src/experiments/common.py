# src/experiments/common.py

"""
Pieces shared by the experiment runners: output resolution, seeded stream
keys and the frame pipeline (synthetic or recorded events -> time-image ->
frame vector).
"""

import logging
from pathlib import Path
from typing import List

import numpy as np

from src.config.experiment_config import ExperimentConfig
from src.encoding.level_encoder import LevelEncoder, build_encoder
from src.events.event_stream import (
    generate_synthetic_stream,
    read_events_csv,
    slice_windows,
    validate_stream,
)
from src.events.time_image import events_to_frame
from src.hypervector.hypervector import Hypervector
from src.structures.frame import Frame, encode_frame, read_frame_csv
from src.utils.random_state import child_rng

logger = logging.getLogger(__name__)

# Top-level keys of the seed tree, one per runner
HEATMAP_STREAM = 1
CAPACITY_STREAM = 2
SENSORIMOTOR_STREAM = 3
SEQUENCE_STREAM = 4
BLOOM_STREAM = 5


def resolve_output(config: ExperimentConfig, default: Path) -> Path:
    return Path(config.out) if config.out else Path(default)


def sibling_output(primary: Path, default_primary: Path, default_sibling: Path) -> Path:
    """Companion file next to an explicit --out path, else its settings default."""
    if primary == Path(default_primary):
        return Path(default_sibling)
    return primary.parent / Path(default_sibling).name


def build_intensity_encoder(config: ExperimentConfig, stream: int) -> LevelEncoder:
    return build_encoder(
        config.encoder_mode,
        config.dimension,
        config.levels,
        config.proximity,
        child_rng(config.seed, stream, 0),
    )


def synthetic_frame(
    config: ExperimentConfig,
    velocity: float,
    rng: np.random.Generator,
) -> Frame:
    """Time-image of one interval of a synthetic moving edge."""
    events = generate_synthetic_stream(
        velocity,
        config.interval_us,
        config.grid,
        config.event_rate,
        rng,
    )
    return events_to_frame(events, (0, config.interval_us), config.grid, config.levels)


def synthetic_frame_vector(
    config: ExperimentConfig,
    encoder: LevelEncoder,
    velocity: float,
    rng: np.random.Generator,
) -> Hypervector:
    return encode_frame(synthetic_frame(config, velocity, rng), encoder)


def recorded_frames(config: ExperimentConfig) -> List[Frame]:
    """
    Time-images of consecutive ``interval_us`` windows of the recorded event
    stream (windows start at its first timestamp), followed by the frame CSVs
    in the order given. Empty when neither input is configured.
    """
    frames: List[Frame] = []
    if config.events_path:
        events = read_events_csv(Path(config.events_path))
        validate_stream(events, config.grid)
        start = events[0].t if events else 0
        for t0, t1, bucket in slice_windows(events, config.interval_us, start_us=start):
            frames.append(events_to_frame(bucket, (t0, t1), config.grid, config.levels))
        logger.info(
            f"Recorded stream | path={config.events_path} | events={len(events)} | "
            f"windows={len(frames)} | interval_us={config.interval_us}"
        )

    for path in config.frame_paths:
        frames.append(read_frame_csv(Path(path)))
    if config.frame_paths:
        logger.info(f"Frame files loaded | count={len(config.frame_paths)}")
    return frames


def recorded_frame_vectors(config: ExperimentConfig, encoder: LevelEncoder) -> List[Hypervector]:
    return [encode_frame(frame, encoder) for frame in recorded_frames(config)]
