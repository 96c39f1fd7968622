# main/run_experiments.py
"""
Experiment CLI for the binary spatter code library.

    python main/run_experiments.py heatmap --lambda 0.03
    python main/run_experiments.py capacity --n-max 51 --trials 100 --p 0 --p 0.1
    python main/run_experiments.py sensorimotor --mode tabular
    python main/run_experiments.py sequence --events recording.csv
    python main/run_experiments.py bloom

Settings defaults < --config JSON file < explicit flags.
"""

import logging
import os
import sys
from typing import Callable, List

import click

# ======================================================
# PATH SETUP
# ======================================================
ROOT_DIR = os.path.abspath(os.path.join(os.path.dirname(__file__), ".."))
sys.path.insert(0, ROOT_DIR)

from src.config.experiment_config import ExperimentConfig
from src.config.settings import LOG_FORMAT, LOG_LEVEL
from src.core.exceptions import HDComputingError
from src.experiments.bloom_runner import run_bloom
from src.experiments.capacity_runner import run_capacity
from src.experiments.heatmap_runner import run_heatmap
from src.experiments.sensorimotor_runner import run_sensorimotor
from src.experiments.sequence_runner import run_sequence

logger = logging.getLogger("run_experiments")

LOG_LEVELS = ["DEBUG", "INFO", "WARNING", "ERROR"]


# ======================================================
# SHARED OPTIONS
# ======================================================
def input_options(fn: Callable) -> Callable:
    """Recorded frames in place of the synthetic moving edge."""
    options = [
        click.option("--events", "events_path", type=click.Path(exists=True, dir_okay=False),
                     help="Event CSV (x,y,t,polarity), cut into interval_us windows."),
        click.option("--frame", "frame_paths", type=click.Path(exists=True, dir_okay=False),
                     multiple=True, help="Frame CSV of row-major intensities (repeatable)."),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


def shared_options(fn: Callable) -> Callable:
    options = [
        click.option("--config", "config_path", type=click.Path(exists=True, dir_okay=False),
                     help="JSON config file; flags override its values."),
        click.option("--seed", type=int, help="Master seed."),
        click.option("--dim", "dimension", type=int, help="Hypervector dimension N."),
        click.option("--out", type=click.Path(dir_okay=False), help="Output CSV path."),
        click.option("--save-config", type=click.Path(dir_okay=False),
                     help="Write the effective config to this JSON file."),
        click.option("--log-level", type=click.Choice(LOG_LEVELS, case_sensitive=False),
                     default=LOG_LEVEL, show_default=True),
        click.option("--quiet", is_flag=True, help="Disable progress bars."),
    ]
    for option in reversed(options):
        fn = option(fn)
    return fn


def setup_logging(level: str) -> None:
    logging.basicConfig(level=level.upper(), format=LOG_FORMAT, force=True)


def execute(runner: Callable[..., List], **overrides) -> None:
    """Resolve config, run, echo output paths; library errors exit with status 2."""
    ctx = click.get_current_context()
    config_path = overrides.pop("config_path")
    save_config = overrides.pop("save_config")
    log_level = overrides.pop("log_level")
    quiet = overrides.pop("quiet")

    setup_logging(log_level)
    try:
        base = ExperimentConfig.load(config_path) if config_path else ExperimentConfig()
        config = base.merged(**overrides)
        if save_config:
            config.save(save_config)
            logger.info(f"Config saved | path={save_config}")

        paths = runner(config, progress=not quiet)
    except HDComputingError as exc:
        logger.error(f"{type(exc).__name__}: {exc}")
        ctx.exit(2)

    for path in paths:
        click.echo(str(path))


# ======================================================
# COMMANDS
# ======================================================
@click.group()
def cli():
    """Binary spatter code experiments. Each subcommand writes CSV output."""


@cli.command()
@shared_options
@click.option("--levels", type=int, help="Number of intensity levels m.")
@click.option("--lambda", "proximity", type=float, help="Per-step flip probability.")
@click.option("--mode", "encoder_mode", type=click.Choice(["linear", "nonlinear"]),
              help="Level encoder construction.")
def heatmap(**kwargs):
    """Distance matrix of the intensity level codebook."""
    execute(run_heatmap, **kwargs)


@cli.command()
@shared_options
@click.option("--n-max", type=int, help="Largest number of bundled components.")
@click.option("--p", "p_values", type=float, multiple=True, help="Bit-flip probability (repeatable).")
@click.option("--trials", type=int, help="Trials per (n, p) point.")
@click.option("--noise-target", type=click.Choice(["component", "bundle"]))
@click.option("--all-n", is_flag=True, help="Simulate even n as well.")
@click.option("--n-jobs", type=int, help="joblib workers (-1 for all cores).")
def capacity(**kwargs):
    """Analytic vs simulated bundle-to-component distance."""
    kwargs["p_values"] = list(kwargs["p_values"]) or None
    kwargs["all_n"] = kwargs["all_n"] or None
    execute(run_capacity, **kwargs)


@cli.command()
@shared_options
@click.option("--levels", type=int)
@click.option("--lambda", "proximity", type=float)
@click.option("--mode", "memory_mode", type=click.Choice(["bundled", "tabular", "both"]),
              help="Memory mode(s) to evaluate.")
@input_options
@click.option("--save-model", is_flag=True,
              help="Also write the largest memory of each mode (.hdam).")
@click.option("--velocity", "recorded_velocity", type=float,
              help="Edge velocity (px/ms) of the --events/--frame input.")
def sensorimotor(**kwargs):
    """Frame -> velocity recall for a sweep of stored-pair counts."""
    kwargs["frame_paths"] = list(kwargs["frame_paths"]) or None
    kwargs["save_model"] = kwargs["save_model"] or None
    execute(run_sensorimotor, **kwargs)


@cli.command()
@shared_options
@click.option("--levels", type=int)
@click.option("--lambda", "proximity", type=float)
@input_options
def sequence(**kwargs):
    """Time-tick sequence memory recall against a frame codebook."""
    kwargs["frame_paths"] = list(kwargs["frame_paths"]) or None
    execute(run_sequence, **kwargs)


@cli.command()
@shared_options
def bloom(**kwargs):
    """Bloom filter read as an OR-bundle of sparse vectors."""
    execute(run_bloom, **kwargs)


if __name__ == "__main__":
    cli()
