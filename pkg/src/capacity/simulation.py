# src/capacity/simulation.py

"""
Monte-Carlo estimate of the bundle-to-component distance.

Per trial: draw n random components, bundle them by majority (exact ties
settled by a fresh random vector), inject bit flips with probability p into
either every component before bundling ("component") or the finished
bundle ("bundle"), then average the normalized distance from the bundle to
the clean components.

Every trial draws from its own generator, seeded from
(master seed, n, p, noise target, trial index), so results do not depend on
how trials are spread over workers.
"""

import logging
from dataclasses import dataclass
from typing import Iterable, List, Sequence

import numpy as np
import pandas as pd
from joblib import Parallel, delayed
from tqdm import tqdm

from src.capacity.analytic import expected_distance_with_ties
from src.config.settings import (
    DEFAULT_DIMENSION,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    N_JOBS,
    NOISE_TARGETS,
    PARALLEL_BACKEND,
)
from src.core.exceptions import InvalidArgumentError
from src.evaluation.metrics import mean_and_stderr
from src.hypervector.hypervector import flip_noise, hamming_many, majority, random_hv
from src.hypervector.kernels import n_bytes_for
from src.utils.random_state import RngLike, child_rng, seed_from

logger = logging.getLogger(__name__)

_TARGET_CODES = {target: code for code, target in enumerate(NOISE_TARGETS)}


@dataclass(frozen=True)
class SimulationResult:
    mean: float
    stderr: float
    trials: int


def _validate(n: int, p: float, dimension: int, trials: int, noise_target: str) -> None:
    for name, value in (("n", n), ("dimension", dimension), ("trials", trials)):
        if isinstance(value, bool) or int(value) != value or value < 1:
            raise InvalidArgumentError(f"{name} must be a positive integer, got {value}")
    if not 0.0 <= p <= 1.0:
        raise InvalidArgumentError(f"p must lie in [0, 1], got {p}")
    if noise_target not in NOISE_TARGETS:
        raise InvalidArgumentError(
            f"noise_target must be one of {NOISE_TARGETS}, got {noise_target}"
        )


def _trial_seed_keys(n: int, p: float, noise_target: str) -> tuple:
    return (int(n), int(round(p * 1_000_000)), _TARGET_CODES[noise_target])


def run_trial(
    n: int,
    p: float,
    dimension: int,
    noise_target: str,
    rng: np.random.Generator,
) -> float:
    """One trial: mean distance from the bundle to its n clean components."""
    n_bytes = n_bytes_for(dimension)
    packed = rng.integers(0, 256, size=(n, n_bytes), dtype=np.uint8)
    clean = np.unpackbits(packed, axis=1, count=dimension, bitorder="little")
    packed = np.packbits(clean, axis=1, bitorder="little")  # zero the padding

    noisy = clean
    if noise_target == "component" and p > 0.0:
        noisy = clean ^ (rng.random((n, dimension)) < p).astype(np.uint8)

    tie_break = random_hv(dimension, rng) if n % 2 == 0 else None
    bundled = majority(noisy.sum(axis=0, dtype=np.int64), n, tie_break, dimension)

    if noise_target == "bundle":
        bundled = flip_noise(bundled, p, rng)

    return float(hamming_many(bundled, packed, dimension).mean())


def simulate_distance(
    n: int,
    p: float,
    dimension: int = DEFAULT_DIMENSION,
    trials: int = DEFAULT_TRIALS,
    noise_target: str = "component",
    seed: RngLike = DEFAULT_SEED,
) -> SimulationResult:
    """
    Aggregate mean and standard error of the per-trial mean distance.

    ``seed`` is a master seed; a Generator is accepted and contributes one draw.
    """
    _validate(n, p, dimension, trials, noise_target)
    if isinstance(seed, np.random.Generator):
        seed = seed_from(seed)
    keys = _trial_seed_keys(n, p, noise_target)

    values = np.array([
        run_trial(int(n), float(p), int(dimension), noise_target, child_rng(seed, *keys, t))
        for t in range(int(trials))
    ])

    mean, stderr = mean_and_stderr(values)
    return SimulationResult(mean=mean, stderr=stderr, trials=int(trials))


# ==========================================================
# Sweep
# ==========================================================
def odd_range(n_max: int) -> List[int]:
    return list(range(1, int(n_max) + 1, 2))


def capacity_sweep(
    n_values: Sequence[int],
    p_values: Iterable[float],
    dimension: int = DEFAULT_DIMENSION,
    trials: int = DEFAULT_TRIALS,
    noise_target: str = "component",
    seed: int = DEFAULT_SEED,
    n_jobs: int = N_JOBS,
    progress: bool = False,
) -> pd.DataFrame:
    """
    Analytic curve against simulation for every (n, p).

    Columns: n, p, analytic, empirical_mean, empirical_stderr, noise_target.
    Even n are compared with the tie-equivalent odd curve.
    """
    points = [(int(n), float(p)) for p in p_values for n in n_values]
    logger.info(
        "Capacity sweep | "
        f"points={len(points)} | N={dimension} | trials={trials} | "
        f"noise_target={noise_target} | n_jobs={n_jobs}"
    )

    iterator = tqdm(points, desc=f"capacity[{noise_target}]", disable=not progress)
    results = Parallel(n_jobs=n_jobs, backend=PARALLEL_BACKEND)(
        delayed(simulate_distance)(n, p, dimension, trials, noise_target, seed)
        for n, p in iterator
    )

    rows = [
        {
            "n": n,
            "p": p,
            "analytic": expected_distance_with_ties(n, p),
            "empirical_mean": res.mean,
            "empirical_stderr": res.stderr,
            "noise_target": noise_target,
        }
        for (n, p), res in zip(points, results)
    ]
    return pd.DataFrame(rows, columns=[
        "n", "p", "analytic", "empirical_mean", "empirical_stderr", "noise_target",
    ])
