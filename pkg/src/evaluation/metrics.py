# src/evaluation/metrics.py

from typing import Dict, Hashable, Iterable, Optional, Sequence, Tuple
from collections import Counter, defaultdict

import numpy as np


# ============================================================
# Recall metrics
# ============================================================

def accuracy(
    predicted: Sequence[Optional[Hashable]],
    truth: Sequence[Hashable],
) -> float:
    """
    Fraction of predictions equal to the stored label.

    A rejected prediction (None) counts as wrong.
    """
    if len(predicted) != len(truth):
        raise ValueError(
            f"predicted and truth differ in length: {len(predicted)} != {len(truth)}"
        )
    if not truth:
        return 0.0

    hits = sum(1 for p, t in zip(predicted, truth) if p is not None and p == t)
    return hits / len(truth)


def per_label_accuracy(
    predicted: Sequence[Optional[Hashable]],
    truth: Sequence[Hashable],
) -> Dict[Hashable, float]:
    """
    Accuracy grouped by the true label (e.g. one entry per velocity bin).
    """
    if len(predicted) != len(truth):
        raise ValueError(
            f"predicted and truth differ in length: {len(predicted)} != {len(truth)}"
        )

    totals: Counter = Counter(truth)
    hits: Dict[Hashable, int] = defaultdict(int)
    for p, t in zip(predicted, truth):
        if p is not None and p == t:
            hits[t] += 1

    return {label: hits[label] / count for label, count in sorted(totals.items())}


# ============================================================
# Rejection
# ============================================================

def false_accept_rate(
    distances: Iterable[float],
    threshold: float,
) -> float:
    """
    False Accept Rate

    Fraction of unknown probes whose best distance is within the threshold,
    i.e. that would be answered instead of rejected.
    """
    values = np.asarray(list(distances), dtype=float)
    if values.size == 0:
        return 0.0
    return float((values <= threshold).mean())


# ============================================================
# Aggregates
# ============================================================

def mean_and_stderr(values: Iterable[float]) -> Tuple[float, float]:
    """Sample mean and standard error (ddof=1); stderr is 0 for one value."""
    arr = np.asarray(list(values), dtype=float)
    if arr.size == 0:
        raise ValueError("mean_and_stderr needs at least one value")
    if arr.size == 1:
        return float(arr[0]), 0.0
    return float(arr.mean()), float(arr.std(ddof=1) / np.sqrt(arr.size))


