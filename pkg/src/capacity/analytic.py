# src/capacity/analytic.py

"""
Expected normalized Hamming distance between a majority-rule bundle of n
random components and any one component, when each bit of the component
(or of the bundle) is flipped with probability p.

Three renderings of the same quantity are provided:

- closed form      : 1/2 - (1 - 2p) / 2^n * C(n-1, (n-1)/2)
- sum form         : (1-p) * S((n-1)/2 + 1) + p * S((n-1)/2),
                     S(a) = 2^-(n-1) * sum_{k=a}^{n-1} C(n-1, k)
- fractional form  : the same double sum with lower bounds n/2 and n/2 - 1,
                     which are not integers for odd n; they are rounded
                     ("ceil" or "floor") before evaluation

The closed and sum forms require odd n. An even-length bundle whose ties are
settled by an independent random vector behaves exactly like an odd bundle
of n + 1 components (see ``expected_distance_with_ties``).
"""

import logging
import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np
import pandas as pd
from scipy.special import gammaln

from src.config.settings import EXACT_BINOMIAL_MAX_N, EXHAUSTIVE_MAX_N, FORM_ROUNDING
from src.core.exceptions import InvalidArgumentError

logger = logging.getLogger(__name__)

ROUNDINGS = ("ceil", "floor")
_LOG2 = math.log(2.0)


@dataclass(frozen=True)
class CapacityQuery:
    """n bundled components (odd), bit-flip probability p."""

    n: int
    p: float = 0.0

    def __post_init__(self):
        if isinstance(self.n, bool) or int(self.n) != self.n or self.n < 1:
            raise InvalidArgumentError(f"n must be a positive integer, got {self.n}")
        if self.n % 2 == 0:
            raise InvalidArgumentError(
                f"n must be odd for the majority-rule forms, got {self.n}"
            )
        _check_p(self.p)
        object.__setattr__(self, "n", int(self.n))
        object.__setattr__(self, "p", float(self.p))


def _check_p(p: float) -> None:
    if not 0.0 <= p <= 1.0:
        raise InvalidArgumentError(f"p must lie in [0, 1], got {p}")


# ==========================================================
# Binomial helpers
# ==========================================================
def scaled_binomial(m: int, k: int, log2_scale: int) -> float:
    """C(m, k) / 2^log2_scale; exact integers up to the configured n, log-space above."""
    if k < 0 or k > m:
        return 0.0
    if m <= EXACT_BINOMIAL_MAX_N:
        return math.comb(m, k) / 2.0 ** log2_scale
    log_value = gammaln(m + 1) - gammaln(k + 1) - gammaln(m - k + 1) - log2_scale * _LOG2
    return float(np.exp(log_value))


def _tail_sum(n: int, lower: int) -> float:
    """2^-(n-1) * sum_{k=lower}^{n-1} C(n-1, k), evaluated term by term."""
    m = n - 1
    return math.fsum(scaled_binomial(m, k, m) for k in range(max(lower, 0), m + 1))


# ==========================================================
# Forms
# ==========================================================
def expected_distance(q: CapacityQuery) -> float:
    """Closed form."""
    central = scaled_binomial(q.n - 1, (q.n - 1) // 2, q.n)
    return 0.5 - (1.0 - 2.0 * q.p) * central


def expected_distance_sum_form(q: CapacityQuery) -> float:
    """Double-sum form with integer lower bounds (n - 1)/2 + 1 and (n - 1)/2."""
    half = (q.n - 1) // 2
    return (1.0 - q.p) * _tail_sum(q.n, half + 1) + q.p * _tail_sum(q.n, half)


def original_article_form(n: int, p: float, rounding: str = FORM_ROUNDING) -> float:
    """
    Double sum with the fractional lower bounds n/2 and n/2 - 1, rounded as
    requested. With "ceil" and odd n this coincides with the sum form.
    """
    if int(n) != n or n < 1:
        raise InvalidArgumentError(f"n must be a positive integer, got {n}")
    _check_p(p)
    if rounding not in ROUNDINGS:
        raise InvalidArgumentError(f"rounding must be one of {ROUNDINGS}, got {rounding}")

    n = int(n)
    rnd = math.ceil if rounding == "ceil" else math.floor
    first = rnd(n / 2)
    second = rnd(n / 2 - 1)
    return (1.0 - p) * _tail_sum(n, first) + p * _tail_sum(n, second)


def expected_distance_with_ties(n: int, p: float = 0.0) -> float:
    """Closed form for any n >= 1; even n uses the random-tie equivalence to n + 1."""
    if int(n) != n or n < 1:
        raise InvalidArgumentError(f"n must be a positive integer, got {n}")
    n = int(n)
    return expected_distance(CapacityQuery(n if n % 2 else n + 1, p))


def exhaustive_majority_flip_probability(n: int, p: float = 0.0) -> float:
    """
    Exact probability that the majority bit differs from a clean component
    bit, by enumerating all 2^n noisy bit patterns at one position. Exact
    ties count as 1/2 (random tie-break).
    """
    if int(n) != n or not 1 <= n <= EXHAUSTIVE_MAX_N:
        raise InvalidArgumentError(
            f"exhaustive enumeration supports 1 <= n <= {EXHAUSTIVE_MAX_N}, got {n}"
        )
    _check_p(p)
    n = int(n)

    patterns = (np.arange(2 ** n)[:, None] >> np.arange(n)) & 1
    ones = patterns.sum(axis=1)
    majority_one = 2 * ones > n
    tie = 2 * ones == n

    # disagreement of the majority with the (noisy) bit of component 0
    differs = np.where(tie, 0.5, (majority_one != patterns[:, 0].astype(bool)).astype(float))
    # component 0's clean bit equals its noisy bit with probability 1 - p
    return float(np.mean((1.0 - p) * differs + p * (1.0 - differs)))


# ==========================================================
# Tables
# ==========================================================
def compare_forms(n_values: Iterable[int], p_values: Iterable[float]) -> pd.DataFrame:
    """
    Fractional-bound form under both roundings next to the sum and closed
    forms. The sum and closed forms are left empty for even n.
    """
    rows = []
    for n in n_values:
        for p in p_values:
            row = {
                "n": int(n),
                "p": float(p),
                "original_ceil": original_article_form(n, p, "ceil"),
                "original_floor": original_article_form(n, p, "floor"),
                "sum_form": np.nan,
                "closed_form": np.nan,
            }
            if n % 2 == 1:
                q = CapacityQuery(n, p)
                row["sum_form"] = expected_distance_sum_form(q)
                row["closed_form"] = expected_distance(q)
            rows.append(row)

    df = pd.DataFrame(rows)
    df["ceil_minus_closed"] = df["original_ceil"] - df["closed_form"]
    df["floor_minus_closed"] = df["original_floor"] - df["closed_form"]
    return df
