"""Exact dynamic-programming solvers for connectivity and independence goals on trees.

The connectivity solvers root the tree at a centroid and recurse into the
components left after removing it: either some optimal solution puts a pebble
on the centroid (covered by the rooted DP, which forces the root to be
occupied) or all pebbles end inside a single component (covered by the
recursion).  The independence solvers run a single rooted DP with paired
occupied/empty tables.

All tables hold float costs with ``inf`` marking infeasible cells; finite
entries are exact integers.
"""

from __future__ import annotations

import math
from collections import deque
from typing import Sequence

import numpy as np

from .distribution import DistributionTable, min_plus_convolve
from .errors import SolverError
from .graphs import Graph, RootedTree, centroid
from .model import (
    GoalKind,
    Guarantee,
    Infeasible,
    Instance,
    Measure,
    SolveReport,
    make_report,
)

INF = math.inf


def _require_tree(inst: Instance, goal: GoalKind) -> None:
    if inst.goal.kind is not goal:
        raise SolverError(f"solver expects goal {goal.value}, got {inst.goal.kind.value}")
    if not inst.graph.is_tree():
        raise SolverError("graph is not a tree")


def _restricted_distances(g: Graph, allowed: frozenset[int] | set[int], source: int) -> dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for v in g.adj[u]:
            if v in allowed and v not in dist:
                dist[v] = dist[u] + 1
                queue.append(v)
    return dist


def _component(g: Graph, allowed: set[int], start: int) -> set[int]:
    comp = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in g.adj[u]:
            if v in allowed and v not in comp:
                comp.add(v)
                queue.append(v)
    return comp


def _route_on_tree(tree: RootedTree, sigma: Sequence[int], place: dict[int, int]) -> list[int]:
    """Assign pebbles to destination counts so nothing crosses an edge both ways.

    ``place[v]`` pebbles must end on v.  Surplus pebbles bubble toward the
    root while unfilled destinations bubble up as slots; whoever meets first
    is matched, so each pebble follows the single tree path to its target.
    """
    by_vertex: dict[int, list[int]] = {}
    for p, v in enumerate(sigma):
        by_vertex.setdefault(v, []).append(p)
    mu = [-1] * len(sigma)
    pools: dict[int, list[int]] = {}
    slots: dict[int, list[int]] = {}
    for u in tree.postorder:
        pool = list(by_vertex.get(u, ()))
        pending = [u] * place.get(u, 0)
        for c in tree.children[u]:
            pool.extend(pools.pop(c))
            pending.extend(slots.pop(c))
        pool.sort()
        fill = min(len(pool), len(pending))
        for i in range(fill):
            mu[pool[i]] = pending[i]
        pools[u] = pool[fill:]
        slots[u] = pending[fill:]
    assert not pools[tree.root] and not slots[tree.root]
    return mu


def _moved_assignment(sigma: Sequence[int], place: dict[int, int]) -> list[int]:
    """Fill destination counts keeping as many pebbles as possible in place."""
    by_vertex: dict[int, list[int]] = {}
    for p, v in enumerate(sigma):
        by_vertex.setdefault(v, []).append(p)
    mu = [-1] * len(sigma)
    paid: list[int] = []
    for v in sorted(place):
        count = place[v]
        if count <= 0:
            continue
        starters = by_vertex.get(v, [])
        keep = min(count, len(starters))
        for p in starters[:keep]:
            mu[p] = v
        paid.extend([v] * (count - keep))
    movers = [p for p in range(len(sigma)) if mu[p] == -1]
    assert len(movers) == len(paid)
    for p, v in zip(movers, paid):
        mu[p] = v
    return mu


def _con_sum_rooted(
    g: Graph,
    vertices: set[int] | frozenset[int],
    root: int,
    sigma: Sequence[int],
    return_tables: bool = False,
):
    """Cheapest total movement onto a connected set containing ``root``."""
    tree = RootedTree(g, root, vertices)
    k = len(sigma)
    js = np.arange(k + 1)
    eta = {u: 0 for u in tree.vertices}
    for v in sigma:
        eta[v] += 1
    for u in tree.postorder:
        for c in tree.children[u]:
            eta[u] += eta[c]
    opt: dict[int, np.ndarray] = {}
    tables: dict[int, DistributionTable] = {}
    for u in tree.postorder:
        kids = tree.children[u]
        gap = np.abs(eta[u] - js).astype(float)
        if not kids:
            opt[u] = gap
            continue
        table = DistributionTable([opt[c] for c in kids], k)
        tables[u] = table
        prefix = np.minimum.accumulate(table.exact_costs())
        vals = gap.copy()
        vals[1:] += prefix[:-1]
        # j = 0: everything inside must leave through u and its parent edge.
        vals[0] = eta[u] + sum(opt[c][0] for c in kids)
        opt[u] = vals
    total = int(opt[root][k])

    place: dict[int, int] = {}
    stack: list[tuple[int, int]] = [(root, k)]
    while stack:
        u, j = stack.pop()
        kids = tree.children[u]
        if not kids:
            place[u] = j
            continue
        if j == 0:
            place[u] = 0
            stack.extend((c, 0) for c in kids)
            continue
        _, handed = tables[u].cost_at_most(j - 1)
        alloc = tables[u].allocation(handed)
        place[u] = j - handed
        stack.extend(zip(kids, alloc))
    mu = _route_on_tree(tree, sigma, place)
    if return_tables:
        return total, mu, opt
    return total, mu


def solve_con_sum_tree(inst: Instance) -> SolveReport:
    """Exact minimum total movement onto a connected set, on trees.

    Always feasible: stacking every pebble on one vertex is connected.
    """
    _require_tree(inst, GoalKind.CON)
    g = inst.graph
    best: tuple[int, list[int]] | None = None
    # (vertex set, per-pebble positions after relocation, cost already paid)
    jobs: deque[tuple[set[int], list[int], int]] = deque()
    jobs.append((set(range(g.n)), list(inst.sigma), 0))
    while jobs:
        vertices, sigma, offset = jobs.popleft()
        pivot = centroid(g, vertices)
        cost, mu = _con_sum_rooted(g, vertices, pivot, sigma)
        if best is None or offset + cost < best[0]:
            best = (offset + cost, mu)
        if len(vertices) == 1:
            continue
        dist = _restricted_distances(g, vertices, pivot)
        remaining = vertices - {pivot}
        for door in sorted(v for v in g.adj[pivot] if v in vertices):
            comp = _component(g, remaining, door)
            moved = sum(dist[v] + 1 for v in sigma if v not in comp)
            relocated = [v if v in comp else door for v in sigma]
            jobs.append((comp, relocated, offset + moved))
    cost, mu = best
    report = make_report(inst, mu, Measure.SUM, Guarantee.exact(), "tree-dp-connected-sum")
    assert report.cost == cost
    return report


def _con_num_rooted(
    g: Graph, vertices: set[int] | frozenset[int], root: int, phi: dict[int, int], k: int
) -> tuple[int, dict[int, int]]:
    """Fewest relocated pebbles onto a connected set containing ``root``."""
    tree = RootedTree(g, root, vertices)
    js = np.arange(k + 1)
    opt: dict[int, np.ndarray] = {}
    tables: dict[int, DistributionTable] = {}
    root_choice: dict[int, np.ndarray] = {}
    for u in tree.postorder:
        kids = tree.children[u]
        free = phi.get(u, 0)
        if not kids:
            opt[u] = np.maximum(js - free, 0).astype(float)
            continue
        table = DistributionTable([opt[c] for c in kids], k)
        tables[u] = table
        stay_cost = np.maximum(js - free, 0).astype(float)
        stay_cost[0] = INF  # at least one pebble must sit on u when any are below
        vals, stay_arg = min_plus_convolve(stay_cost, table.exact_costs(), k + 1)
        vals[0] = 0.0
        opt[u] = vals
        root_choice[u] = stay_arg
    total = int(opt[root][k])

    place: dict[int, int] = {}
    stack: list[tuple[int, int]] = [(root, k)]
    while stack:
        u, j = stack.pop()
        if j == 0:
            continue
        kids = tree.children[u]
        if not kids:
            place[u] = j
            continue
        stay = int(root_choice[u][j])
        place[u] = stay
        alloc = tables[u].allocation(j - stay)
        stack.extend(zip(kids, alloc))
    return total, place


def solve_con_num_tree(inst: Instance) -> SolveReport:
    """Exact minimum number of moved pebbles onto a connected set, on trees.

    Pebbles that start outside the component being tried have to move anyway,
    so they join the pool with no free seat; their start positions are left
    untouched.
    """
    _require_tree(inst, GoalKind.CON)
    g, k = inst.graph, inst.k
    best: tuple[int, dict[int, int]] | None = None
    jobs: deque[set[int]] = deque([set(range(g.n))])
    while jobs:
        vertices = jobs.popleft()
        pivot = centroid(g, vertices)
        phi = {}
        for v in inst.sigma:
            if v in vertices:
                phi[v] = phi.get(v, 0) + 1
        cost, place = _con_num_rooted(g, vertices, pivot, phi, k)
        if best is None or cost < best[0]:
            best = (cost, place)
        if len(vertices) == 1:
            continue
        remaining = vertices - {pivot}
        for door in sorted(v for v in g.adj[pivot] if v in vertices):
            jobs.append(_component(g, remaining, door))
    cost, place = best
    mu = _moved_assignment(inst.sigma, place)
    report = make_report(inst, mu, Measure.NUM, Guarantee.exact(), "tree-dp-connected-num")
    assert report.cost == cost
    return report


def _ind_rooted(
    inst: Instance, measure: Measure
) -> tuple[int, dict[int, int]] | Infeasible:
    """Shared occupied/empty table DP for both independence measures on trees."""
    g, k = inst.graph, inst.k
    tree = RootedTree(g, 0)
    js = np.arange(k + 1)
    eta = [0] * g.n
    for v in inst.sigma:
        eta[v] += 1
    started = [count > 0 for count in eta]
    for u in tree.postorder:
        for c in tree.children[u]:
            eta[u] += eta[c]

    plus: dict[int, np.ndarray] = {}
    minus: dict[int, np.ndarray] = {}
    both: dict[int, np.ndarray] = {}
    tables_when_occupied: dict[int, DistributionTable] = {}
    tables_when_empty: dict[int, DistributionTable] = {}
    for u in tree.postorder:
        kids = tree.children[u]
        if measure is Measure.SUM:
            gap = np.abs(eta[u] - js).astype(float)
            own_cost = None
        else:
            gap = np.zeros(k + 1)
            own_cost = 0.0 if started[u] else 1.0
        if not kids:
            p = np.full(k + 1, INF)
            m = np.full(k + 1, INF)
            if measure is Measure.SUM:
                p[1] = abs(eta[u] - 1)
                m[0] = eta[u]
            else:
                p[1] = own_cost
                m[0] = 0.0
        else:
            occupied_table = DistributionTable([minus[c] for c in kids], k)
            empty_table = DistributionTable([both[c] for c in kids], k)
            tables_when_occupied[u] = occupied_table
            tables_when_empty[u] = empty_table
            p = np.full(k + 1, INF)
            if measure is Measure.SUM:
                p[1:] = gap[1:] + occupied_table.exact_costs()[:-1]
            else:
                p[1:] = own_cost + occupied_table.exact_costs()[:-1]
            m = gap + empty_table.exact_costs()
        plus[u] = p
        minus[u] = m
        both[u] = np.minimum(p, m)

    total = both[tree.root][k]
    if total == INF:
        return Infeasible(f"the tree has no independent set of size {k}")

    place: dict[int, int] = {}
    # state: 0 = free choice, 1 = must occupy, -1 = must stay empty
    stack: list[tuple[int, int, int]] = [(tree.root, k, 0)]
    while stack:
        u, j, state = stack.pop()
        if state == 0:
            state = 1 if plus[u][j] <= minus[u][j] else -1
        kids = tree.children[u]
        if state == 1:
            place[u] = 1
            if kids:
                alloc = tables_when_occupied[u].allocation(j - 1)
                stack.extend((c, jc, -1) for c, jc in zip(kids, alloc))
        else:
            if kids and j >= 0:
                alloc = tables_when_empty[u].allocation(j)
                stack.extend((c, jc, 0) for c, jc in zip(kids, alloc))
    return int(total), place


def solve_ind_sum_tree(inst: Instance) -> SolveReport | Infeasible:
    """Exact minimum total movement onto an independent set, on trees."""
    _require_tree(inst, GoalKind.IND)
    if inst.k > inst.graph.n:
        return Infeasible(f"{inst.k} pebbles cannot occupy {inst.graph.n} distinct vertices")
    outcome = _ind_rooted(inst, Measure.SUM)
    if isinstance(outcome, Infeasible):
        return outcome
    cost, place = outcome
    tree = RootedTree(inst.graph, 0)
    mu = _route_on_tree(tree, inst.sigma, place)
    report = make_report(inst, mu, Measure.SUM, Guarantee.exact(), "tree-dp-independent-sum")
    assert report.cost == cost
    return report


def solve_ind_num_tree(inst: Instance) -> SolveReport | Infeasible:
    """Exact minimum number of moved pebbles onto an independent set, on trees."""
    _require_tree(inst, GoalKind.IND)
    if inst.k > inst.graph.n:
        return Infeasible(f"{inst.k} pebbles cannot occupy {inst.graph.n} distinct vertices")
    outcome = _ind_rooted(inst, Measure.NUM)
    if isinstance(outcome, Infeasible):
        return outcome
    cost, place = outcome
    mu = _moved_assignment(inst.sigma, place)
    report = make_report(inst, mu, Measure.NUM, Guarantee.exact(), "tree-dp-independent-num")
    assert report.cost == cost
    return report
