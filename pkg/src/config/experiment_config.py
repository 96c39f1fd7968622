# src/config/experiment_config.py

import json
from pathlib import Path
from typing import List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator, model_validator

from src.config.settings import (
    DEFAULT_DIMENSION,
    DEFAULT_ENCODER_MODE,
    DEFAULT_EVENT_RATE,
    DEFAULT_GRID_HEIGHT,
    DEFAULT_GRID_WIDTH,
    DEFAULT_INTERVAL_US,
    DEFAULT_LEVELS,
    DEFAULT_N_MAX,
    DEFAULT_NOISE_TARGET,
    DEFAULT_P_VALUES,
    DEFAULT_PROXIMITY,
    DEFAULT_REJECT_THRESHOLD,
    DEFAULT_SEED,
    DEFAULT_TRIALS,
    DEFAULT_VELOCITY_BINS,
    DEFAULT_VELOCITY_RANGE,
    BLOOM_DIMENSION,
    BLOOM_INSERTED,
    BLOOM_K,
    BLOOM_NEGATIVE_QUERIES,
    N_JOBS,
    SENSORIMOTOR_PAIR_COUNTS,
    SENSORIMOTOR_UNKNOWN_PROBES,
    SEQUENCE_CODEBOOK_SIZE,
    SEQUENCE_PAIR_COUNTS,
)
from src.core.exceptions import InvalidArgumentError
from src.utils.io import load_json, save_json


# =========================
# Experiment configuration
# =========================
class ExperimentConfig(BaseModel):
    """
    Every knob of the experiment runners.

    Defaults come from settings; a JSON file overrides them and CLI flags
    override the file.
    """

    model_config = ConfigDict(extra="forbid", validate_assignment=True)

    seed: int = Field(DEFAULT_SEED, ge=0)
    dimension: int = Field(DEFAULT_DIMENSION, ge=1, description="Hypervector dimension N")

    # ---- Scalar encoding ----
    levels: int = Field(DEFAULT_LEVELS, ge=2, description="Intensity levels m")
    proximity: float = Field(
        DEFAULT_PROXIMITY,
        gt=0.0,
        le=0.5,
        description="Per-step flip probability of the nonlinear level encoder",
    )
    encoder_mode: Literal["linear", "nonlinear"] = DEFAULT_ENCODER_MODE

    # ---- Events / frames ----
    grid_width: int = Field(DEFAULT_GRID_WIDTH, ge=1)
    grid_height: int = Field(DEFAULT_GRID_HEIGHT, ge=1)
    interval_us: int = Field(DEFAULT_INTERVAL_US, ge=1, description="Time-image window")
    event_rate: float = Field(DEFAULT_EVENT_RATE, gt=0.0)
    velocity_bins: int = Field(DEFAULT_VELOCITY_BINS, ge=2)
    velocity_low: float = DEFAULT_VELOCITY_RANGE[0]
    velocity_high: float = DEFAULT_VELOCITY_RANGE[1]
    events_path: Optional[str] = Field(
        None, description="Recorded event CSV (x,y,t,polarity) used instead of synthetic streams"
    )
    frame_paths: List[str] = Field(
        default_factory=list, description="Frame CSVs (row-major intensities) appended to the input"
    )
    recorded_velocity: Optional[float] = Field(
        None, description="Edge velocity (px/ms) of the recorded input, used as its label"
    )

    # ---- Capacity ----
    trials: int = Field(DEFAULT_TRIALS, ge=1)
    n_max: int = Field(DEFAULT_N_MAX, ge=1)
    p_values: List[float] = Field(default_factory=lambda: list(DEFAULT_P_VALUES))
    noise_target: Literal["component", "bundle"] = DEFAULT_NOISE_TARGET
    all_n: bool = Field(False, description="Simulate even n as well as odd n")
    n_jobs: int = N_JOBS

    # ---- Associative memory ----
    memory_mode: Literal["bundled", "tabular", "both"] = "both"
    pair_counts: List[int] = Field(default_factory=lambda: list(SENSORIMOTOR_PAIR_COUNTS))
    reject_threshold: float = Field(DEFAULT_REJECT_THRESHOLD, ge=0.0, le=1.0)
    unknown_probes: int = Field(SENSORIMOTOR_UNKNOWN_PROBES, ge=0)
    save_model: bool = False

    # ---- Sequence memory ----
    sequence_pair_counts: List[int] = Field(default_factory=lambda: list(SEQUENCE_PAIR_COUNTS))
    codebook_size: int = Field(SEQUENCE_CODEBOOK_SIZE, ge=1)

    # ---- Bloom filter ----
    bloom_dimension: int = Field(BLOOM_DIMENSION, ge=1)
    bloom_k: int = Field(BLOOM_K, ge=1)
    bloom_inserted: int = Field(BLOOM_INSERTED, ge=0)
    bloom_negative_queries: int = Field(BLOOM_NEGATIVE_QUERIES, ge=1)

    out: Optional[str] = Field(None, description="Output CSV path (runner default if empty)")

    @field_validator("p_values")
    @classmethod
    def _check_p_values(cls, v: List[float]) -> List[float]:
        if not v:
            raise ValueError("p_values must not be empty")
        for p in v:
            if not 0.0 <= p <= 1.0:
                raise ValueError(f"p must lie in [0, 1], got {p}")
        return v

    @field_validator("pair_counts", "sequence_pair_counts")
    @classmethod
    def _check_counts(cls, v: List[int]) -> List[int]:
        if not v or any(c < 1 for c in v):
            raise ValueError("pair counts must be a nonempty list of positive integers")
        return v

    @model_validator(mode="after")
    def _check_ranges(self) -> "ExperimentConfig":
        if self.velocity_high <= self.velocity_low:
            raise ValueError("velocity_high must exceed velocity_low")
        return self

    # =========================
    # Persistence
    # =========================
    @classmethod
    def load(cls, path: Path) -> "ExperimentConfig":
        try:
            data = load_json(path)
        except json.JSONDecodeError as exc:
            raise InvalidArgumentError(f"Config file {path} is not valid JSON: {exc}") from exc
        if not isinstance(data, dict):
            raise InvalidArgumentError(f"Config file {path} must hold a JSON object")
        return cls.from_dict(data)

    def save(self, path: Path) -> None:
        save_json(self.model_dump(mode="json"), path)

    @classmethod
    def from_dict(cls, data: dict) -> "ExperimentConfig":
        try:
            return cls.model_validate(data)
        except ValidationError as exc:
            raise InvalidArgumentError(f"Invalid experiment config: {exc}") from exc

    def merged(self, **overrides) -> "ExperimentConfig":
        """Copy with the non-None overrides applied (and validated)."""
        data = self.model_dump()
        data.update({k: v for k, v in overrides.items() if v is not None})
        return self.from_dict(data)

    @property
    def grid(self) -> tuple:
        return self.grid_width, self.grid_height

    @property
    def has_recorded_input(self) -> bool:
        return bool(self.events_path or self.frame_paths)
