# tests/test_metrics.py

import pytest

from src.evaluation.metrics import (
    accuracy,
    false_accept_rate,
    mean_and_stderr,
    per_label_accuracy,
)


def test_accuracy_counts_rejections_as_wrong():
    assert accuracy([1, None, 3, 4], [1, 2, 3, 5]) == 0.5
    assert accuracy([], []) == 0.0


def test_per_label_accuracy():
    result = per_label_accuracy([0, 1, None, 2, 2], [0, 1, 1, 2, 0])
    assert result == {0: 0.5, 1: 0.5, 2: 1.0}
    assert list(result) == [0, 1, 2]


def test_length_mismatch():
    with pytest.raises(ValueError):
        accuracy([1], [1, 2])
    with pytest.raises(ValueError):
        per_label_accuracy([1, 2], [1])


def test_false_accept_rate_threshold_is_inclusive():
    assert false_accept_rate([0.40, 0.47, 0.49, 0.51], 0.47) == 0.5
    assert false_accept_rate([], 0.47) == 0.0


def test_mean_and_stderr():
    mean, stderr = mean_and_stderr([1.0, 2.0, 3.0])
    assert mean == 2.0
    assert stderr == pytest.approx(1.0 / 3 ** 0.5)

    assert mean_and_stderr([0.25]) == (0.25, 0.0)
    with pytest.raises(ValueError):
        mean_and_stderr([])
