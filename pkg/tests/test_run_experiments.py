# tests/test_run_experiments.py

import json
import logging

import numpy as np
import pandas as pd
import pytest
from click.testing import CliRunner

from main.run_experiments import cli
from src.config.experiment_config import ExperimentConfig
from src.events.event_stream import generate_synthetic_stream, write_events_csv
from src.structures.frame import Frame, write_frame_csv

SMALL = {
    "dimension": 2048,
    "levels": 8,
    "grid_width": 8,
    "grid_height": 6,
    "interval_us": 20_000,
    "velocity_bins": 5,
    "n_max": 7,
    "trials": 3,
    "p_values": [0.0, 0.2],
    "pair_counts": [1, 5],
    "unknown_probes": 50,
    "sequence_pair_counts": [1, 3],
    "codebook_size": 20,
    "bloom_dimension": 1024,
    "bloom_inserted": 40,
    "bloom_negative_queries": 500,
}


@pytest.fixture(autouse=True)
def reset_logging():
    yield
    logging.getLogger().handlers.clear()


@pytest.fixture
def small_config(tmp_path):
    path = tmp_path / "small.json"
    path.write_text(json.dumps(SMALL))
    return str(path)


def _invoke(*args):
    return CliRunner().invoke(cli, list(args) or ["--help"])


def test_heatmap_matrix(tmp_path):
    out = tmp_path / "heatmap.csv"
    result = _invoke("heatmap", "--dim", "1024", "--out", str(out), "--quiet")

    assert result.exit_code == 0, result.output
    assert str(out) in result.output

    dist = pd.read_csv(out, index_col=0).to_numpy()
    assert dist.shape == (26, 26)
    assert np.all(np.diag(dist) == 0.0)
    assert np.allclose(dist, dist.T)


@pytest.mark.parametrize("command", ["heatmap", "capacity", "sensorimotor", "sequence", "bloom"])
def test_reruns_are_byte_identical(tmp_path, small_config, command):
    outputs = []
    for run in ("first", "second"):
        out = tmp_path / run / f"{command}.csv"
        result = _invoke(command, "--config", small_config, "--out", str(out), "--quiet")
        assert result.exit_code == 0, result.output
        outputs.append(out.read_bytes())

    assert outputs[0] == outputs[1]


def test_seed_changes_output(tmp_path, small_config):
    a, b = tmp_path / "a.csv", tmp_path / "b.csv"
    _invoke("heatmap", "--config", small_config, "--out", str(a), "--seed", "1", "--quiet")
    _invoke("heatmap", "--config", small_config, "--out", str(b), "--seed", "2", "--quiet")

    assert a.read_bytes() != b.read_bytes()


def test_capacity_writes_curve_and_forms(tmp_path, small_config):
    out = tmp_path / "cap" / "curve.csv"
    result = _invoke("capacity", "--config", small_config, "--out", str(out),
                     "--p", "0", "--quiet")
    assert result.exit_code == 0, result.output

    curve = pd.read_csv(out)
    assert curve["n"].tolist() == [1, 3, 5, 7]
    assert curve.loc[curve.n == 3, "analytic"].iloc[0] == pytest.approx(0.25)

    forms = pd.read_csv(tmp_path / "cap" / "capacity_forms.csv")
    assert forms["ceil_minus_closed"].abs().max() < 1e-6


def test_capacity_all_n(tmp_path, small_config):
    out = tmp_path / "curve.csv"
    result = _invoke("capacity", "--config", small_config, "--out", str(out),
                     "--all-n", "--n-max", "4", "--quiet")
    assert result.exit_code == 0, result.output
    assert sorted(set(pd.read_csv(out)["n"])) == [1, 2, 3, 4]


def test_sensorimotor_tabular_recall(tmp_path, small_config):
    out = tmp_path / "sm" / "accuracy.csv"
    result = _invoke("sensorimotor", "--config", small_config, "--out", str(out),
                     "--mode", "tabular", "--save-model", "--quiet")
    assert result.exit_code == 0, result.output

    df = pd.read_csv(out)
    assert set(df["mode"]) == {"tabular"}
    assert (df["stored_accuracy"] == 1.0).all()
    assert (df["mean_distance"] == 0.0).all()
    assert (tmp_path / "sm" / "sensorimotor_memory_tabular.hdam").exists()


def test_sequence_single_pair_is_exact(tmp_path, small_config):
    out = tmp_path / "seq.csv"
    result = _invoke("sequence", "--config", small_config, "--out", str(out), "--quiet")
    assert result.exit_code == 0, result.output

    df = pd.read_csv(out)
    single = df[df.n_pairs == 1].iloc[0]
    assert single["recovered"] == 1
    assert single["probe_distance"] == 0.0


def test_bloom_has_no_false_negatives(tmp_path, small_config):
    out = tmp_path / "bloom.csv"
    result = _invoke("bloom", "--config", small_config, "--out", str(out), "--quiet")
    assert result.exit_code == 0, result.output

    df = pd.read_csv(out)
    assert df["n_inserted"].tolist() == [10, 20, 40, 80]
    assert (df["false_negatives"] == 0).all()
    assert (df["or_oracle_equal"] == 1).all()


def test_unwritable_output_exits_with_status_2(tmp_path):
    blocker = tmp_path / "blocker"
    blocker.write_text("a regular file")

    result = _invoke("heatmap", "--dim", "256", "--out", str(blocker / "heatmap.csv"), "--quiet")
    assert result.exit_code == 2


def test_invalid_flag_value_exits_with_status_2(tmp_path):
    result = _invoke("heatmap", "--levels", "1", "--out", str(tmp_path / "h.csv"), "--quiet")
    assert result.exit_code == 2


def test_save_config_round_trip(tmp_path):
    saved = tmp_path / "effective.json"
    out = tmp_path / "heatmap.csv"
    result = _invoke("heatmap", "--dim", "256", "--levels", "5", "--out", str(out),
                     "--save-config", str(saved), "--quiet")
    assert result.exit_code == 0, result.output

    config = ExperimentConfig.load(saved)
    assert (config.dimension, config.levels, config.out) == (256, 5, str(out))


def test_help_lists_subcommands():
    result = _invoke()
    for command in ("heatmap", "capacity", "sensorimotor", "sequence", "bloom"):
        assert command in result.output


# ============================================================
# Recorded input
# ============================================================

@pytest.fixture
def recorded_config(tmp_path):
    path = tmp_path / "recorded.json"
    path.write_text(json.dumps({**SMALL, "pair_counts": [1, 2], "sequence_pair_counts": [1, 2]}))
    return str(path)


@pytest.fixture
def events_csv(tmp_path):
    # ~60 ms of a moving edge on the SMALL grid: three 20 ms windows
    events = generate_synthetic_stream(0.1, 60_000, grid=(8, 6), rate=2000, rng=3)
    return str(write_events_csv(events, tmp_path / "recording.csv"))


def test_sequence_from_recorded_events(tmp_path, recorded_config, events_csv):
    out = tmp_path / "seq.csv"
    result = _invoke("sequence", "--config", recorded_config, "--events", events_csv,
                     "--out", str(out), "--quiet")
    assert result.exit_code == 0, result.output

    df = pd.read_csv(out)
    assert df["n_pairs"].tolist() == [1, 2, 2]
    assert df["tick"].tolist() == [0, 0, 1]
    single = df[df.n_pairs == 1].iloc[0]
    assert single["recovered"] == 1
    assert single["probe_distance"] == 0.0


def test_sequence_from_frame_files(tmp_path, recorded_config, fixtures_dir):
    blank = write_frame_csv(Frame.zeros(6, 2), tmp_path / "blank.csv")
    out = tmp_path / "seq.csv"
    result = _invoke("sequence", "--config", recorded_config, "--levels", "26",
                     "--frame", str(fixtures_dir / "translating_edge_frame.csv"),
                     "--frame", str(blank), "--out", str(out), "--quiet")
    assert result.exit_code == 0, result.output
    assert len(pd.read_csv(out)) == 3


def test_sensorimotor_from_recorded_events(tmp_path, recorded_config, events_csv):
    out = tmp_path / "sm.csv"
    result = _invoke("sensorimotor", "--config", recorded_config, "--events", events_csv,
                     "--velocity", "0.1", "--mode", "tabular", "--out", str(out), "--quiet")
    assert result.exit_code == 0, result.output

    df = pd.read_csv(out)
    # 0.1 px/ms falls in bin 2 of 5 over [-1, 1)
    assert set(df["velocity_bin"]) == {2}
    assert (df["stored_accuracy"] == 1.0).all()
    assert df["n_pairs"].tolist() == [1, 2]


def test_recorded_input_errors_exit_with_status_2(tmp_path, recorded_config, small_config,
                                                  events_csv):
    out = str(tmp_path / "sm.csv")

    no_velocity = _invoke("sensorimotor", "--config", recorded_config, "--events", events_csv,
                          "--out", out, "--quiet")
    assert no_velocity.exit_code == 2

    # SMALL asks for 5 pairs but the recording has three windows
    too_many = _invoke("sensorimotor", "--config", small_config, "--events", events_csv,
                       "--velocity", "0.1", "--out", out, "--quiet")
    assert too_many.exit_code == 2
