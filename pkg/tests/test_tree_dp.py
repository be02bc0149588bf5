import random

import numpy as np
import pytest

from pebblemotion import Graph, Infeasible, SolverError
from pebblemotion.model import Goal, GoalKind, Instance, Measure, solution_cost, validate
from pebblemotion.oracle import oracle_solve
from pebblemotion.tree_dp import (
    _con_sum_rooted,
    solve_con_num_tree,
    solve_con_sum_tree,
    solve_ind_num_tree,
    solve_ind_sum_tree,
)
from helpers import path_graph, random_tree, star_graph


def _con(graph, sigma):
    return Instance(graph, tuple(sigma), Goal(GoalKind.CON))


def _ind(graph, sigma):
    return Instance(graph, tuple(sigma), Goal(GoalKind.IND))


def test_con_sum_star():
    report = solve_con_sum_tree(_con(star_graph(3), (1, 2)))
    assert report.cost == 1
    assert report.guarantee.label() == "exact"


def test_con_sum_stacked_pebbles_cost_zero():
    g = random_tree(random.Random(3), 6)
    report = solve_con_sum_tree(_con(g, (4, 4, 4)))
    assert report.cost == 0


def test_con_sum_path_endpoints():
    report = solve_con_sum_tree(_con(path_graph(5), (0, 4)))
    assert report.cost == 3


def test_con_num_star():
    assert solve_con_num_tree(_con(star_graph(3), (1, 2))).cost == 1


def test_con_num_adjacent_pair_costs_zero():
    assert solve_con_num_tree(_con(path_graph(4), (1, 2, 2))).cost == 0


def test_con_num_path_alternating():
    # keeping the two pebbles at 0 and 2 and moving the third onto vertex 1
    report = solve_con_num_tree(_con(path_graph(5), (0, 2, 4)))
    assert report.cost == 1
    assert validate(_con(path_graph(5), (0, 2, 4)), report.solution)


def test_ind_sum_examples():
    assert solve_ind_sum_tree(_ind(path_graph(5), (1, 2))).cost == 1
    assert solve_ind_sum_tree(_ind(path_graph(5), (0, 2))).cost == 0
    assert solve_ind_sum_tree(_ind(path_graph(3), (1, 1))).cost == 2


def test_ind_num_examples():
    assert solve_ind_num_tree(_ind(path_graph(5), (1, 2))).cost == 1
    assert solve_ind_num_tree(_ind(path_graph(5), (0, 4))).cost == 0
    assert solve_ind_num_tree(_ind(star_graph(3), (0, 1, 1))).cost == 2


def test_ind_infeasible():
    outcome = solve_ind_sum_tree(_ind(path_graph(3), (0, 1, 2)))
    assert isinstance(outcome, Infeasible)
    outcome = solve_ind_num_tree(_ind(path_graph(2), (0, 0, 1)))
    assert isinstance(outcome, Infeasible)


def test_single_vertex():
    g = Graph(1, [])
    assert solve_con_sum_tree(_con(g, (0, 0))).cost == 0
    assert solve_con_num_tree(_con(g, (0, 0))).cost == 0
    assert solve_ind_sum_tree(_ind(g, (0,))).cost == 0
    assert isinstance(solve_ind_num_tree(_ind(g, (0, 0))), Infeasible)


def test_rejects_non_trees_and_wrong_goals():
    triangle = Graph(3, [(0, 1), (1, 2), (0, 2)])
    with pytest.raises(SolverError):
        solve_con_sum_tree(_con(triangle, (0,)))
    with pytest.raises(SolverError):
        solve_ind_num_tree(_ind(triangle, (0,)))
    with pytest.raises(SolverError):
        solve_con_sum_tree(_ind(path_graph(3), (0,)))
    with pytest.raises(SolverError):
        solve_ind_sum_tree(_con(path_graph(3), (0,)))


def test_con_sum_tables_all_finite():
    rng = random.Random(8)
    for _ in range(20):
        n = rng.randint(1, 8)
        g = random_tree(rng, n)
        sigma = [rng.randrange(n) for _ in range(rng.randint(1, 4))]
        _, _, tables = _con_sum_rooted(g, set(range(n)), 0, sigma, return_tables=True)
        for row in tables.values():
            assert np.isfinite(row).all()


def _edge_flow_total(g: Graph, sigma, mu) -> int:
    """Sum over edges of the absolute start/end population difference across it."""
    from pebblemotion.graphs import RootedTree

    tree = RootedTree(g, 0)
    start_below = [0] * g.n
    end_below = [0] * g.n
    for v in sigma:
        start_below[v] += 1
    for v in mu:
        end_below[v] += 1
    for u in tree.postorder:
        for c in tree.children[u]:
            start_below[u] += start_below[c]
            end_below[u] += end_below[c]
    return sum(abs(start_below[u] - end_below[u]) for u in range(g.n) if u != tree.root)


def test_con_sum_cost_equals_edge_flows():
    rng = random.Random(17)
    for _ in range(60):
        n = rng.randint(2, 9)
        g = random_tree(rng, n)
        sigma = tuple(rng.randrange(n) for _ in range(rng.randint(1, 4)))
        report = solve_con_sum_tree(_con(g, sigma))
        assert report.cost == _edge_flow_total(g, sigma, report.solution.mu)


def test_ind_solutions_are_injective_and_independent():
    rng = random.Random(23)
    for _ in range(60):
        n = rng.randint(2, 9)
        g = random_tree(rng, n)
        k = rng.randint(1, 4)
        inst = _ind(g, tuple(rng.randrange(n) for _ in range(k)))
        for solver in (solve_ind_sum_tree, solve_ind_num_tree):
            outcome = solver(inst)
            if isinstance(outcome, Infeasible):
                continue
            mu = outcome.solution.mu
            assert len(set(mu)) == k
            assert all(not g.has_edge(a, b) for a in mu for b in mu if a < b)


@pytest.mark.parametrize("solver,goal,measure", [
    (solve_con_sum_tree, GoalKind.CON, Measure.SUM),
    (solve_con_num_tree, GoalKind.CON, Measure.NUM),
    (solve_ind_sum_tree, GoalKind.IND, Measure.SUM),
    (solve_ind_num_tree, GoalKind.IND, Measure.NUM),
])
def test_matches_oracle_on_random_trees(solver, goal, measure):
    rng = random.Random(hash((goal.value, measure.value)) & 0xFFFF)
    for _ in range(80):
        n = rng.randint(1, 8)
        k = rng.randint(1, 4)
        g = random_tree(rng, n)
        inst = Instance(g, tuple(rng.randrange(n) for _ in range(k)), Goal(goal))
        got = solver(inst)
        expected = oracle_solve(inst, measure)
        if isinstance(expected, Infeasible):
            assert isinstance(got, Infeasible)
            continue
        assert not isinstance(got, Infeasible)
        assert got.cost == expected.cost
        assert validate(inst, got.solution)
        assert solution_cost(inst, got.solution, measure) == got.cost
