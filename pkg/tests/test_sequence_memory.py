# tests/test_sequence_memory.py

import numpy as np
import pytest

from src.capacity.analytic import CapacityQuery, expected_distance
from src.core.exceptions import EmptyMemoryError, PreconditionViolationError
from src.hypervector.hypervector import hamming, random_hv
from src.memory.item_memory import ItemMemory
from src.structures.sequence_memory import (
    SequenceMemory,
    sequence_insert,
    sequence_probe,
    sequence_remove,
)


@pytest.fixture
def frames(dim):
    return ItemMemory.random(range(100), dim, np.random.default_rng(17))


def test_single_pair_exact_recovery(frames, dim):
    mem = SequenceMemory(dim, rng=1)
    sequence_insert(mem, 0, frames.get(7))

    assert sequence_probe(mem, 0) == frames.get(7)


def test_five_pairs_recovered_against_codebook(frames, dim):
    mem = SequenceMemory(dim, rng=2)
    stored = [3, 14, 15, 92, 65]
    for tick, label in enumerate(stored):
        mem.insert(tick, frames.get(label))

    for tick, label in enumerate(stored):
        found, _ = frames.cleanup(mem.probe(tick))
        assert found == label


def test_probe_noise_matches_capacity_curve(frames, dim):
    mem = SequenceMemory(dim, rng=3)
    stored = list(range(5))
    for tick, label in enumerate(stored):
        mem.insert(tick, frames.get(label))

    noise = np.mean([hamming(mem.probe(t), frames.get(l)) for t, l in enumerate(stored)])
    assert noise == pytest.approx(expected_distance(CapacityQuery(5, 0.0)), abs=0.01)


def test_insert_remove_restores_counters(frames, dim):
    mem = SequenceMemory(dim, rng=4)
    mem.insert(0, frames.get(0)).insert(1, frames.get(1))
    before = mem.accumulator.copy()

    mem.insert(2, frames.get(2))
    sequence_remove(mem, 2, frames.get(2))

    assert mem.accumulator == before
    assert mem.stored_count == 2


def test_removed_frame_no_longer_retrieved(frames, dim):
    mem = SequenceMemory(dim, rng=5)
    mem.insert(0, frames.get(10)).insert(1, frames.get(20))
    mem.remove(1, frames.get(20))

    probe = mem.probe(1)
    assert hamming(probe, frames.get(20)) == pytest.approx(0.5, abs=0.02)
    assert frames.distances(probe).min() == pytest.approx(0.5, abs=0.02)


def test_tick_vectors_are_kept(dim):
    mem = SequenceMemory(dim, rng=6)
    assert mem.tick_vector(3) == mem.tick_vector(3)
    assert len(mem.tick_codebook) == 1


def test_errors(frames, dim):
    mem = SequenceMemory(dim, rng=7)
    with pytest.raises(EmptyMemoryError):
        mem.probe(0)
    with pytest.raises(PreconditionViolationError):
        mem.remove(0, frames.get(0))

    mem.insert(0, frames.get(0))
    with pytest.raises(PreconditionViolationError):
        mem.remove(5, frames.get(0))

    with pytest.raises(ValueError):
        mem.insert(1, random_hv(dim + 8, 0))


def test_probing_a_tick_does_not_make_it_removable(frames, dim):
    mem = SequenceMemory(dim, rng=8)
    mem.insert(0, frames.get(0))
    mem.probe(5)

    with pytest.raises(PreconditionViolationError):
        mem.remove(5, frames.get(0))

    mem.remove(0, frames.get(0))
    with pytest.raises(PreconditionViolationError):
        mem.insert(1, frames.get(1)).remove(0, frames.get(0))
    assert mem.stored_count == 1
    assert np.abs(mem.accumulator.counts).max() <= mem.accumulator.total
