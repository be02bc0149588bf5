import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from pebblemotion import Graph, Infeasible, InstanceError, Solution
from pebblemotion.model import Goal, GoalKind, Instance, Measure, validate
from pebblemotion.oracle import oracle_ind
from pebblemotion.paths import (
    PathInstance,
    greedy_feasible,
    path_layout,
    solve_ind_max_on_path_instance,
    solve_ind_max_path,
)
from helpers import path_graph


def test_path_instance_validation():
    with pytest.raises(InstanceError):
        PathInstance(3, (2, 1))
    with pytest.raises(InstanceError):
        PathInstance(3, (0, 5))
    with pytest.raises(InstanceError):
        PathInstance(3, ())


def test_greedy_trace():
    sol = greedy_feasible(PathInstance(5, (0, 1)), 1)
    assert sol.mu == (0, 2)


def test_greedy_infeasible_three_on_three():
    assert isinstance(greedy_feasible(PathInstance(3, (0, 1, 2)), 1), Infeasible)


def test_greedy_identity_when_already_spread():
    pi = PathInstance(7, (0, 2, 4))
    sol = greedy_feasible(pi, 0)
    assert sol.mu == pi.pebbles


def test_solver_examples():
    assert solve_ind_max_path(PathInstance(5, (0, 1))).cost == 1
    assert solve_ind_max_path(PathInstance(5, (0, 2, 4))).cost == 0
    assert solve_ind_max_path(PathInstance(4, (1, 2))).cost == 1


def test_solver_infeasible_when_overfull():
    assert isinstance(solve_ind_max_path(PathInstance(3, (0, 1, 2))), Infeasible)
    assert isinstance(solve_ind_max_path(PathInstance(4, (0, 0, 1))), Infeasible)


def test_swap_bound_arithmetic_exhaustive():
    for s1, s2, e1, e2 in itertools.product(range(21), repeat=4):
        if s1 <= s2 and e2 <= e1:
            assert max(abs(s1 - e1), abs(s2 - e2)) >= max(abs(s1 - e2), abs(s2 - e1))


@given(st.integers(0, 10**6), st.integers(1, 30))
@settings(max_examples=80, deadline=None)
def test_feasibility_monotone_in_bound(seed, n):
    rng = random.Random(seed)
    k = rng.randint(1, max(1, (n + 1) // 2))
    pebbles = tuple(sorted(rng.randrange(n) for _ in range(k)))
    pi = PathInstance(n, pebbles)
    previous = False
    for z in range(n):
        feasible = not isinstance(greedy_feasible(pi, z), Infeasible)
        assert feasible or not previous
        previous = previous or feasible


def test_order_preserved():
    rng = random.Random(9)
    for _ in range(60):
        n = rng.randint(2, 20)
        k = rng.randint(1, (n + 1) // 2)
        pi = PathInstance(n, tuple(sorted(rng.randrange(n) for _ in range(k))))
        outcome = solve_ind_max_path(pi)
        assert not isinstance(outcome, Infeasible)
        mu = outcome.solution.mu
        assert all(mu[i] < mu[i + 1] for i in range(k - 1))
        assert all(mu[i + 1] - mu[i] >= 2 for i in range(k - 1))


def test_exhaustive_exactness_small_paths():
    for n in range(1, 9):
        g = path_graph(n)
        for k in range(1, (n + 1) // 2 + 1):
            for sigma in itertools.combinations_with_replacement(range(n), k):
                pi = PathInstance(n, sigma)
                got = solve_ind_max_path(pi)
                inst = Instance(g, sigma, Goal(GoalKind.IND))
                expected = oracle_ind(inst, Measure.MAX)
                assert isinstance(got, Infeasible) == isinstance(expected, Infeasible)
                if not isinstance(got, Infeasible):
                    assert got.cost == expected.cost


def test_instance_wrapper_maps_vertices():
    # same path, shuffled vertex ids
    g = Graph(5, [(3, 1), (1, 4), (4, 0), (0, 2)])  # path 3-1-4-0-2
    inst = Instance(g, (1, 4), Goal(GoalKind.IND))
    outcome = solve_ind_max_on_path_instance(inst)
    assert outcome.cost == 1
    assert validate(inst, outcome.solution)


def test_path_layout():
    assert path_layout(path_graph(4)) == [0, 1, 2, 3]
    assert path_layout(Graph(1, [])) == [0]
    assert path_layout(Graph(4, [(0, 1), (0, 2), (0, 3)])) is None
