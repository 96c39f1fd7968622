# tests/test_capacity.py

import math

import numpy as np
import pytest

from src.capacity.analytic import (
    CapacityQuery,
    compare_forms,
    exhaustive_majority_flip_probability,
    expected_distance,
    expected_distance_sum_form,
    expected_distance_with_ties,
    original_article_form,
    scaled_binomial,
)
from src.capacity.simulation import capacity_sweep, odd_range, simulate_distance
from src.core.exceptions import InvalidArgumentError

P_GRID = [0.0, 0.1, 0.2, 0.3, 0.4, 0.5]


@pytest.mark.parametrize(
    "n, p, expected",
    [
        (1, 0.0, 0.0),
        (3, 0.0, 0.25),
        (3, 0.1, 0.3),
        (1, 0.3, 0.3),
        (5, 0.0, 0.3125),
        (11, 0.5, 0.5),
    ],
)
def test_closed_form_spot_values(n, p, expected):
    assert expected_distance(CapacityQuery(n, p)) == pytest.approx(expected, abs=1e-12)


@pytest.mark.parametrize("n", odd_range(15))
@pytest.mark.parametrize("p", [0.0, 0.1, 0.35])
def test_closed_form_matches_exhaustive_enumeration(n, p):
    assert exhaustive_majority_flip_probability(n, p) == pytest.approx(
        expected_distance(CapacityQuery(n, p)), abs=1e-12
    )


@pytest.mark.parametrize("n", [2, 4, 8, 14])
def test_even_bundle_with_random_ties_behaves_like_next_odd(n):
    assert exhaustive_majority_flip_probability(n, 0.1) == pytest.approx(
        expected_distance_with_ties(n, 0.1), abs=1e-12
    )
    assert expected_distance_with_ties(n, 0.1) == expected_distance(CapacityQuery(n + 1, 0.1))


def test_closed_form_is_monotone_in_n_and_p():
    p_below_half = [0.0, 0.1, 0.2, 0.3, 0.4]
    table = np.array([
        [expected_distance(CapacityQuery(n, p)) for p in p_below_half]
        for n in odd_range(101)
    ])

    assert np.all(np.diff(table, axis=0) >= -1e-12)
    assert np.all(np.diff(table, axis=1) >= -1e-12)


def test_large_bundles_approach_one_half():
    assert expected_distance(CapacityQuery(101, 0.0)) > 0.46
    assert expected_distance(CapacityQuery(101, 0.0)) < 0.5


def test_sum_form_agrees_with_closed_form():
    for n in odd_range(101):
        for p in P_GRID:
            q = CapacityQuery(n, p)
            assert expected_distance_sum_form(q) == pytest.approx(expected_distance(q), abs=1e-12)


def test_large_n_uses_log_space_binomials():
    # 2^-1000 * C(1000, 500) ~ sqrt(2 / (pi * 1000))
    assert scaled_binomial(1000, 500, 1000) == pytest.approx(
        math.sqrt(2 / (math.pi * 1000)), rel=1e-3
    )
    q = CapacityQuery(1001, 0.0)
    assert 0.47 < expected_distance(q) < 0.5
    assert expected_distance_sum_form(q) == pytest.approx(expected_distance(q), abs=1e-9)


def test_fractional_form_roundings():
    for n in odd_range(21):
        for p in P_GRID:
            closed = expected_distance(CapacityQuery(n, p))
            assert original_article_form(n, p, "ceil") == pytest.approx(closed, abs=1e-12)

    # floor pulls the lower bounds down by one and overestimates for p < 1/2
    assert original_article_form(5, 0.0, "floor") > expected_distance(CapacityQuery(5, 0.0))


def test_compare_forms_table():
    table = compare_forms([3, 4, 5], [0.0, 0.2])

    assert list(table.columns) == [
        "n", "p", "original_ceil", "original_floor", "sum_form", "closed_form",
        "ceil_minus_closed", "floor_minus_closed",
    ]
    assert len(table) == 6
    assert table.loc[table.n == 4, "closed_form"].isna().all()
    odd = table[table.n % 2 == 1]
    assert np.allclose(odd["ceil_minus_closed"], 0.0, atol=1e-12)


def test_query_validation():
    with pytest.raises(InvalidArgumentError):
        CapacityQuery(4, 0.1)
    with pytest.raises(InvalidArgumentError):
        CapacityQuery(0, 0.1)
    with pytest.raises(InvalidArgumentError):
        CapacityQuery(3, 1.5)
    with pytest.raises(InvalidArgumentError):
        expected_distance_with_ties(0)
    with pytest.raises(InvalidArgumentError):
        original_article_form(5, 0.1, "round")
    with pytest.raises(InvalidArgumentError):
        exhaustive_majority_flip_probability(30)


# ============================================================
# Simulation
# ============================================================

@pytest.mark.parametrize("n, p", [(1, 0.0), (1, 0.2), (5, 0.0), (9, 0.1), (21, 0.3)])
@pytest.mark.parametrize("noise_target", ["component", "bundle"])
def test_simulation_tracks_analytic_curve(n, p, noise_target):
    result = simulate_distance(n, p, dimension=4096, trials=20, noise_target=noise_target, seed=7)

    assert result.trials == 20
    assert result.mean == pytest.approx(expected_distance(CapacityQuery(n, p)), abs=0.01)


def test_even_simulation_tracks_tie_curve():
    result = simulate_distance(6, 0.0, dimension=4096, trials=20, seed=8)
    assert result.mean == pytest.approx(expected_distance_with_ties(6), abs=0.01)


def test_simulation_is_deterministic():
    a = simulate_distance(7, 0.1, dimension=1000, trials=5, seed=3)
    b = simulate_distance(7, 0.1, dimension=1000, trials=5, seed=3)
    c = simulate_distance(7, 0.1, dimension=1000, trials=5, seed=4)

    assert a == b
    assert a != c


def test_simulation_validation():
    with pytest.raises(InvalidArgumentError):
        simulate_distance(3, 0.1, noise_target="everywhere")
    with pytest.raises(InvalidArgumentError):
        simulate_distance(0, 0.1)
    with pytest.raises(InvalidArgumentError):
        simulate_distance(3, -0.1)


def test_sweep_does_not_depend_on_worker_count():
    kwargs = dict(n_values=[1, 3, 4], p_values=[0.0, 0.2], dimension=512, trials=3, seed=11)
    serial = capacity_sweep(n_jobs=1, **kwargs)
    parallel = capacity_sweep(n_jobs=2, **kwargs)

    assert list(serial.columns) == [
        "n", "p", "analytic", "empirical_mean", "empirical_stderr", "noise_target",
    ]
    assert len(serial) == 6
    assert serial.equals(parallel)


@pytest.mark.slow
@pytest.mark.parametrize("noise_target", ["component", "bundle"])
def test_full_sweep_stays_on_curve(noise_target):
    df = capacity_sweep(odd_range(51), [0.0, 0.1, 0.2, 0.3], dimension=8192, trials=100,
                        noise_target=noise_target, seed=42)

    error = (df["empirical_mean"] - df["analytic"]).abs()
    # points with no spread (n=1, p=0) must match exactly
    assert (error <= 3 * df["empirical_stderr"] + 1e-12).all()
    assert error.max() < 0.01
