# src/experiments/sensorimotor_runner.py

"""
Frame -> velocity recall.

For every stored-pair count, synthetic moving-edge streams at chosen
velocity bins are turned into time-images, encoded as frame vectors and
stored in a SensorimotorMemory (bundled and/or tabular). Every stored frame
is then queried back, and random vectors stand in for never-seen frames to
measure how often the reject threshold lets them through.

A recorded event stream (or frame CSVs) can replace the synthetic streams;
its windows are stored in time order under the bin of ``recorded_velocity``.
"""

import logging
from pathlib import Path
from typing import Dict, List, Tuple

import numpy as np
import pandas as pd
from tqdm import tqdm

from src.capacity.analytic import expected_distance_with_ties
from src.config.experiment_config import ExperimentConfig
from src.config.settings import MEMORY_MODES, SENSORIMOTOR_CSV_PATH, SENSORIMOTOR_MODEL_PATH
from src.core.exceptions import InvalidArgumentError
from src.encoding.level_encoder import LevelEncoder, VelocityQuantizer
from src.evaluation.metrics import accuracy, false_accept_rate, per_label_accuracy
from src.experiments.common import (
    SENSORIMOTOR_STREAM,
    build_intensity_encoder,
    recorded_frame_vectors,
    resolve_output,
    sibling_output,
    synthetic_frame_vector,
)
from src.hypervector.hypervector import Hypervector, random_hv
from src.memory.item_memory import ItemMemory
from src.memory.model_store import save_sensorimotor_memory
from src.memory.sensorimotor_memory import SensorimotorMemory
from src.utils.io import save_csv
from src.utils.random_state import child_rng

logger = logging.getLogger(__name__)

COLUMNS = [
    "mode",
    "n_pairs",
    "velocity_bin",
    "stored_accuracy",
    "mean_distance",
    "expected_distance",
    "false_accept_rate",
]


def assign_bins(n_pairs: int, bins: int) -> List[int]:
    """Spread stored pairs evenly over the velocity bins."""
    if n_pairs <= bins:
        return [(j * bins) // n_pairs for j in range(n_pairs)]
    return [j % bins for j in range(n_pairs)]


def _modes(config: ExperimentConfig) -> Tuple[str, ...]:
    return MEMORY_MODES if config.memory_mode == "both" else (config.memory_mode,)


def _recorded_pairs(
    config: ExperimentConfig,
    encoder: LevelEncoder,
    quantizer: VelocityQuantizer,
) -> Tuple[List[Hypervector], int]:
    """Frame vectors of the recorded input and the velocity bin they are stored under."""
    if not config.has_recorded_input:
        return [], -1
    recorded = recorded_frame_vectors(config, encoder)
    if config.recorded_velocity is None:
        raise InvalidArgumentError("recorded_velocity is required with a recorded input")

    too_many = [n for n in config.pair_counts if n > len(recorded)]
    if too_many:
        raise InvalidArgumentError(
            f"Pair counts {too_many} exceed the {len(recorded)} recorded frames"
        )
    return recorded, quantizer.to_level(config.recorded_velocity)


def _evaluate(
    mem: SensorimotorMemory,
    frames: List[Hypervector],
    bins: List[int],
    unknown: List[Hypervector],
    threshold: float,
) -> Tuple[List[Dict], float]:
    predicted, distances = [], []
    for frame_hv in frames:
        label, distance = mem.predict_or_reject(frame_hv, threshold)
        predicted.append(label)
        distances.append(distance)

    far = false_accept_rate((mem.predict(hv)[1] for hv in unknown), threshold)

    by_bin = per_label_accuracy(predicted, bins)
    dist_arr = np.asarray(distances)
    bin_arr = np.asarray(bins)
    rows = [
        {
            "velocity_bin": int(b),
            "stored_accuracy": acc,
            "mean_distance": float(dist_arr[bin_arr == b].mean()),
        }
        for b, acc in by_bin.items()
    ]

    logger.info(
        "Sensorimotor eval | "
        f"mode={mem.mode} | n_pairs={len(frames)} | "
        f"accuracy={accuracy(predicted, bins):.4f} | "
        f"mean_distance={dist_arr.mean():.4f} | false_accept={far:.4f}"
    )
    return rows, far


def run_sensorimotor(config: ExperimentConfig, progress: bool = False) -> List[Path]:
    logger.info(
        "Sensorimotor run | "
        f"modes={_modes(config)} | pairs={config.pair_counts} | "
        f"N={config.dimension} | m={config.levels} | bins={config.velocity_bins} | "
        f"grid={config.grid_width}x{config.grid_height} | seed={config.seed}"
    )

    encoder = build_intensity_encoder(config, SENSORIMOTOR_STREAM)
    quantizer = VelocityQuantizer(config.velocity_low, config.velocity_high, config.velocity_bins)
    velocities = ItemMemory.random(
        range(config.velocity_bins),
        config.dimension,
        child_rng(config.seed, SENSORIMOTOR_STREAM, 1),
    )

    recorded, recorded_bin = _recorded_pairs(config, encoder, quantizer)

    csv_path = resolve_output(config, SENSORIMOTOR_CSV_PATH)
    rows: List[Dict] = []
    last_memories: Dict[str, SensorimotorMemory] = {}

    for n_pairs in tqdm(config.pair_counts, desc="sensorimotor", disable=not progress):
        if recorded:
            frames = recorded[:n_pairs]
            bins = [recorded_bin] * n_pairs
        else:
            bins = assign_bins(n_pairs, config.velocity_bins)
            frames = [
                synthetic_frame_vector(
                    config,
                    encoder,
                    quantizer.to_value(b),
                    child_rng(config.seed, SENSORIMOTOR_STREAM, 2, n_pairs, j),
                )
                for j, b in enumerate(bins)
            ]
        unknown_rng = child_rng(config.seed, SENSORIMOTOR_STREAM, 3, n_pairs)
        unknown = [random_hv(config.dimension, unknown_rng) for _ in range(config.unknown_probes)]

        for mode in _modes(config):
            mem = SensorimotorMemory(
                velocities,
                mode,
                tie_break=random_hv(
                    config.dimension,
                    child_rng(config.seed, SENSORIMOTOR_STREAM, 4, n_pairs),
                ),
            )
            for frame_hv, b in zip(frames, bins):
                mem.store(frame_hv, b)

            bin_rows, far = _evaluate(mem, frames, bins, unknown, config.reject_threshold)
            expected = expected_distance_with_ties(n_pairs, 0.0) if mode == "bundled" else 0.0
            for row in bin_rows:
                rows.append({
                    "mode": mode,
                    "n_pairs": n_pairs,
                    **row,
                    "expected_distance": expected,
                    "false_accept_rate": far,
                })
            last_memories[mode] = mem

    paths = [save_csv(pd.DataFrame(rows, columns=COLUMNS), csv_path)]

    if config.save_model:
        model_path = sibling_output(csv_path, SENSORIMOTOR_CSV_PATH, SENSORIMOTOR_MODEL_PATH)
        for mode, mem in last_memories.items():
            path = model_path.with_name(f"{model_path.stem}_{mode}{model_path.suffix}")
            save_sensorimotor_memory(mem, path)
            paths.append(path)

    return paths
