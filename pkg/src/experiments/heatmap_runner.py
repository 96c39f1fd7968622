# src/experiments/heatmap_runner.py

import logging
from pathlib import Path
from typing import List

import numpy as np

from src.config.experiment_config import ExperimentConfig
from src.config.settings import HEATMAP_CSV_PATH
from src.encoding.level_encoder import export_heatmap_csv
from src.experiments.common import HEATMAP_STREAM, build_intensity_encoder, resolve_output

logger = logging.getLogger(__name__)


def run_heatmap(config: ExperimentConfig, progress: bool = False) -> List[Path]:
    """m x m distance matrix of the intensity codebook."""
    logger.info(
        "Heatmap run | "
        f"mode={config.encoder_mode} | N={config.dimension} | "
        f"m={config.levels} | lambda={config.proximity} | seed={config.seed}"
    )
    encoder = build_intensity_encoder(config, HEATMAP_STREAM)

    dist = encoder.distance_matrix()
    adjacent = np.diag(dist, k=1)
    logger.info(
        f"Heatmap | adjacent_mean={adjacent.mean():.4f} | "
        f"far_end={dist[0, -1]:.4f}"
    )

    path = export_heatmap_csv(encoder, resolve_output(config, HEATMAP_CSV_PATH))
    return [path]
