# src/experiments/capacity_runner.py

import logging
from pathlib import Path
from typing import List

from src.capacity.analytic import compare_forms
from src.capacity.simulation import capacity_sweep, odd_range
from src.config.experiment_config import ExperimentConfig
from src.config.settings import (
    CAPACITY_CSV_PATH,
    CAPACITY_FORMS_CSV_PATH,
    FORM_COMPARE_N_MAX,
)
from src.experiments.common import CAPACITY_STREAM, resolve_output, sibling_output
from src.utils.io import save_csv
from src.utils.random_state import derive_seed

logger = logging.getLogger(__name__)


def run_capacity(config: ExperimentConfig, progress: bool = False) -> List[Path]:
    """
    Simulated bundle-to-component distance against the analytic curve,
    plus the table comparing the closed, double-sum and fractional-bound forms.
    """
    if config.all_n:
        n_values = list(range(1, config.n_max + 1))
    else:
        n_values = odd_range(config.n_max)

    logger.info(
        "Capacity run | "
        f"n_max={config.n_max} | all_n={config.all_n} | p={config.p_values} | "
        f"N={config.dimension} | trials={config.trials} | "
        f"noise_target={config.noise_target}"
    )

    df = capacity_sweep(
        n_values,
        config.p_values,
        dimension=config.dimension,
        trials=config.trials,
        noise_target=config.noise_target,
        seed=derive_seed(config.seed, CAPACITY_STREAM),
        n_jobs=config.n_jobs,
        progress=progress,
    )

    worst = (df["empirical_mean"] - df["analytic"]).abs().max()
    logger.info(f"Capacity sweep done | rows={len(df)} | max_abs_gap={worst:.4f}")

    curve_path = resolve_output(config, CAPACITY_CSV_PATH)
    save_csv(df, curve_path)

    forms = compare_forms(
        odd_range(min(config.n_max, FORM_COMPARE_N_MAX)),
        config.p_values,
    )
    forms_path = sibling_output(curve_path, CAPACITY_CSV_PATH, CAPACITY_FORMS_CSV_PATH)
    save_csv(forms, forms_path)

    return [curve_path, forms_path]
