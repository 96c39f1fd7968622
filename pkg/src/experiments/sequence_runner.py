# src/experiments/sequence_runner.py

import logging
from pathlib import Path
from typing import Dict, List

import pandas as pd
from tqdm import tqdm

from src.capacity.analytic import expected_distance_with_ties
from src.config.experiment_config import ExperimentConfig
from src.config.settings import SEQUENCE_CSV_PATH
from src.core.exceptions import InvalidArgumentError
from src.experiments.common import (
    SEQUENCE_STREAM,
    build_intensity_encoder,
    recorded_frame_vectors,
    resolve_output,
    synthetic_frame_vector,
)
from src.memory.item_memory import ItemMemory
from src.structures.sequence_memory import SequenceMemory
from src.utils.io import save_csv
from src.utils.random_state import child_rng

logger = logging.getLogger(__name__)

COLUMNS = ["n_pairs", "tick", "recovered", "probe_distance", "expected_distance"]


def build_frame_codebook(config: ExperimentConfig) -> ItemMemory:
    """
    Codebook of frame vectors: the recorded input in time order when one is
    configured, else streams at uniformly drawn velocities.
    """
    encoder = build_intensity_encoder(config, SEQUENCE_STREAM)
    if config.has_recorded_input:
        recorded = recorded_frame_vectors(config, encoder)
        return ItemMemory.from_pairs(enumerate(recorded), config.dimension)

    velocity_rng = child_rng(config.seed, SEQUENCE_STREAM, 1)
    velocities = velocity_rng.uniform(
        config.velocity_low, config.velocity_high, size=config.codebook_size
    )

    codebook = ItemMemory(config.dimension)
    for i, v in enumerate(velocities):
        rng = child_rng(config.seed, SEQUENCE_STREAM, 2, i)
        codebook.add(i, synthetic_frame_vector(config, encoder, float(v), rng))
    return codebook


def _check_pair_counts(config: ExperimentConfig, available: int) -> None:
    too_many = [n for n in config.sequence_pair_counts if n > available]
    if too_many:
        raise InvalidArgumentError(
            f"Pair counts {too_many} exceed codebook size {available}"
        )


def run_sequence(config: ExperimentConfig, progress: bool = False) -> List[Path]:
    """
    Store n frames under time ticks, probe every tick and clean the result
    up against the frame codebook. A recorded input is stored in time order;
    synthetic frames are drawn from the codebook at random.
    """
    recorded = config.has_recorded_input
    if not recorded:
        _check_pair_counts(config, config.codebook_size)

    logger.info(
        "Sequence run | "
        f"pairs={config.sequence_pair_counts} | recorded={recorded} | "
        f"N={config.dimension} | seed={config.seed}"
    )
    codebook = build_frame_codebook(config)
    _check_pair_counts(config, len(codebook))

    rows: List[Dict] = []
    for n_pairs in tqdm(config.sequence_pair_counts, desc="sequence", disable=not progress):
        if recorded:
            stored = range(n_pairs)
        else:
            pick_rng = child_rng(config.seed, SEQUENCE_STREAM, 3, n_pairs)
            stored = pick_rng.choice(config.codebook_size, size=n_pairs, replace=False)

        mem = SequenceMemory(config.dimension, rng=child_rng(config.seed, SEQUENCE_STREAM, 4, n_pairs))
        for tick, label in enumerate(stored):
            mem.insert(tick, codebook.get(int(label)))

        expected = expected_distance_with_ties(n_pairs, 0.0)
        hits = 0
        for tick, label in enumerate(stored):
            found, distance = codebook.cleanup(mem.probe(tick))
            # identical frames (e.g. empty windows) count as recovered
            recovered = int(codebook.get(found) == codebook.get(int(label)))
            hits += recovered
            rows.append({
                "n_pairs": n_pairs,
                "tick": tick,
                "recovered": recovered,
                "probe_distance": distance,
                "expected_distance": expected,
            })

        logger.info(f"Sequence recall | n_pairs={n_pairs} | recovered={hits}/{n_pairs}")

    path = save_csv(pd.DataFrame(rows, columns=COLUMNS), resolve_output(config, SEQUENCE_CSV_PATH))
    return [path]
