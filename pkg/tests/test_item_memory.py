# tests/test_item_memory.py

import pytest

from src.core.exceptions import DimensionMismatchError, EmptyMemoryError, InvalidArgumentError
from src.hypervector.hypervector import flip_noise, hamming, random_hv
from src.memory.item_memory import ItemMemory, cleanup


def test_exact_query_returns_label(rng):
    memory = ItemMemory.random(["a", "b", "c"], 512, rng)
    assert cleanup(memory, memory.get("b")) == ("b", 0.0)


def test_noisy_query_cleans_up(rng, dim):
    memory = ItemMemory.random(range(100), dim, rng)
    query = flip_noise(memory.get(42), 0.1, rng)

    label, distance = memory.cleanup(query)
    assert label == 42
    assert distance == pytest.approx(0.1, abs=0.02)


def test_ties_go_to_earliest_entry(rng):
    hv = random_hv(256, rng)
    memory = ItemMemory.from_pairs([("first", hv), ("second", hv)], 256)

    assert memory.cleanup(hv) == ("first", 0.0)


def test_entries(rng):
    memory = ItemMemory(64)
    hv = memory.add(1, random_hv(64, rng))

    assert 1 in memory and 2 not in memory
    assert len(memory) == 1
    assert memory.labels == [1]
    assert memory.get(1) == hv
    assert memory.get_or_create(1, rng) == hv
    assert memory.as_matrix().shape == (1, 8)

    memory.get_or_create(2, rng)
    assert memory.labels == [1, 2]
    assert memory.as_matrix().shape == (2, 8)


def test_errors(rng):
    memory = ItemMemory(64)
    with pytest.raises(EmptyMemoryError):
        memory.cleanup(random_hv(64, rng))

    memory.add("x", random_hv(64, rng))
    with pytest.raises(InvalidArgumentError):
        memory.add("x", random_hv(64, rng))
    with pytest.raises(DimensionMismatchError):
        memory.add("y", random_hv(65, rng))
    with pytest.raises(DimensionMismatchError):
        memory.cleanup(random_hv(65, rng))
    with pytest.raises(InvalidArgumentError):
        memory.get("missing")


def test_created_labels_get_independent_vectors(rng, dim):
    memory = ItemMemory(dim)
    a = memory.get_or_create("a", rng)
    b = memory.get_or_create("b", rng)

    assert hamming(a, b) == pytest.approx(0.5, abs=0.02)
    assert memory.cleanup(b) == ("b", 0.0)

    with pytest.raises(InvalidArgumentError):
        memory.get_or_create("c", None)
    assert "c" not in memory
