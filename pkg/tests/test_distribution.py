import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pebblemotion.distribution import DistributionTable, min_plus_convolve, optimal_distribution
from helpers import brute_distribution

INF = math.inf


def test_single_row_exactly():
    cost, alloc = optimal_distribution([[5, 2]], 1, "exactly")
    assert (cost, alloc) == (2, [1])


def test_two_rows_exactly_prefers_lex_smallest():
    cost, alloc = optimal_distribution([[0, 1], [0, 1]], 1, "exactly")
    assert cost == 1
    assert alloc in ([0, 1], [1, 0])
    assert alloc == [0, 1]  # lexicographic tie-break


def test_two_rows_at_most_takes_empty():
    cost, alloc = optimal_distribution([[0, 1], [0, 1]], 1, "at-most")
    assert (cost, alloc) == (0, [0, 0])


def test_infeasible_returns_inf():
    cost, alloc = optimal_distribution([[0, INF], [0, INF]], 1, "exactly")
    assert cost == INF and alloc == []


def test_no_rows():
    assert optimal_distribution([], 0, "exactly") == (0, [])
    cost, alloc = optimal_distribution([], 2, "exactly")
    assert cost == INF and alloc == []


def test_unknown_mode():
    with pytest.raises(ValueError):
        optimal_distribution([[0]], 0, "sometimes")


def test_min_plus_convolve_small():
    vals, args = min_plus_convolve(np.array([0.0, 4.0]), np.array([1.0, 2.0]), 3)
    assert list(vals) == [1.0, 2.0, 6.0]
    assert args[0] == 0 and args[1] == 0


def test_allocation_matches_cost():
    rows = [[0, 3, 1], [2, 0, 5], [1, 1, 1]]
    table = DistributionTable(rows, 2)
    for budget in range(3):
        cost = table.cost_exactly(budget)
        alloc = table.allocation(budget)
        assert sum(alloc) == budget
        assert sum(row[j] for row, j in zip(rows, alloc)) == cost


@given(
    st.integers(0, 4),
    st.lists(
        st.lists(st.one_of(st.integers(0, 9), st.just(INF)), min_size=5, max_size=5),
        min_size=1,
        max_size=3,
    ),
    st.sampled_from(["exactly", "at-most"]),
)
@settings(max_examples=150, deadline=None)
def test_matches_bruteforce(budget, rows, mode):
    rows = [row[: budget + 1] for row in rows]
    expected = brute_distribution(rows, budget, mode)
    cost, alloc = optimal_distribution(rows, budget, mode)
    assert cost == expected
    if cost != INF:
        assert sum(row[j] for row, j in zip(rows, alloc)) == cost
        if mode == "exactly":
            assert sum(alloc) == budget
        else:
            assert sum(alloc) <= budget
