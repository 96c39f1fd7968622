# src/experiments/bloom_runner.py

import logging
from pathlib import Path
from typing import Dict, List

import numpy as np
import pandas as pd

from src.bloom.or_bundle_filter import OrBundleFilter, expected_false_positive_rate, or_bundle
from src.config.experiment_config import ExperimentConfig
from src.config.settings import BLOOM_CSV_PATH
from src.experiments.common import BLOOM_STREAM, resolve_output
from src.hypervector.hypervector import zeros
from src.utils.io import save_csv
from src.utils.random_state import child_rng

logger = logging.getLogger(__name__)

COLUMNS = [
    "n_inserted",
    "k",
    "N",
    "false_negatives",
    "false_positive_rate",
    "expected_rate",
    "or_oracle_equal",
]

LOAD_FACTORS = (0.25, 0.5, 1.0, 2.0)


def insert_counts(base: int) -> List[int]:
    """Insert counts swept around the configured one."""
    return sorted({int(round(base * f)) for f in LOAD_FACTORS})


def _keys(prefix: str, rng: np.random.Generator, count: int) -> List[str]:
    return [f"{prefix}:{v}" for v in rng.integers(0, 2**62, size=count)]


def run_bloom(config: ExperimentConfig, progress: bool = False) -> List[Path]:
    """
    Zero-false-negative check, false-positive rate against (1 - e^{-kn/N})^k,
    and equality of the filter bits with the OR-bundle of sparse encodings.
    """
    N, k = config.bloom_dimension, config.bloom_k
    logger.info(
        "Bloom run | "
        f"N={N} | k={k} | inserted={insert_counts(config.bloom_inserted)} | "
        f"negatives={config.bloom_negative_queries} | seed={config.seed}"
    )

    rows: List[Dict] = []
    for n in insert_counts(config.bloom_inserted):
        # "in:" and "out:" prefixes keep positives and negatives disjoint
        members = _keys("in", child_rng(config.seed, BLOOM_STREAM, 1, n), n)
        negatives = _keys(
            "out", child_rng(config.seed, BLOOM_STREAM, 2, n), config.bloom_negative_queries
        )

        flt = OrBundleFilter(N, k).insert_many(members)

        false_negatives = sum(1 for key in members if key not in flt)
        fp_rate = sum(1 for key in negatives if key in flt) / len(negatives)

        if members:
            oracle = or_bundle(flt.encoder.encode(key) for key in members)
        else:
            oracle = zeros(N)

        rows.append({
            "n_inserted": n,
            "k": k,
            "N": N,
            "false_negatives": false_negatives,
            "false_positive_rate": fp_rate,
            "expected_rate": expected_false_positive_rate(N, k, n),
            "or_oracle_equal": int(flt.vector == oracle),
        })
        logger.info(
            f"Bloom | n={n} | fill={flt.fill_ratio():.4f} | "
            f"fp_rate={fp_rate:.5f} | expected={rows[-1]['expected_rate']:.5f}"
        )

    path = save_csv(pd.DataFrame(rows, columns=COLUMNS), resolve_output(config, BLOOM_CSV_PATH))
    return [path]
