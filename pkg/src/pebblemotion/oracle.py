"""Brute-force exact solvers used as ground truth.

All oracles carry hard size guards: exceeding a guard raises
:class:`GuardError` instead of silently truncating the search, since a wrong
oracle would poison every test built on it.  The ``PEBBLE_ORACLE_LIMIT``
environment variable overrides the guards.
"""

from __future__ import annotations

import itertools
import os
from math import comb

from scipy.optimize import linear_sum_assignment

from .errors import GuardError, SolverError
from .model import (
    Goal,
    GoalKind,
    Guarantee,
    Infeasible,
    Instance,
    Measure,
    Solution,
    SolveReport,
    make_report,
    predicate_holds,
    validate,
)
from .primitives import BipartiteGraph, max_bipartite_matching

PLACEMENT_GUARD = 10_000_000
SUBSET_GUARD = 1_000_000
BALL_GUARD = 10_000_000


def _guard_limit(default: int) -> int:
    raw = os.environ.get("PEBBLE_ORACLE_LIMIT")
    if raw is None:
        return default
    try:
        return int(raw)
    except ValueError as exc:
        raise GuardError(f"PEBBLE_ORACLE_LIMIT must be an integer, got {raw!r}") from exc


def oracle_solve(inst: Instance, measure: Measure) -> SolveReport | Infeasible:
    """Exact optimum by enumerating every placement of every pebble.

    Ties are broken toward the lexicographically smallest end-vertex tuple.
    Guarded by ``n**k`` against the placement limit.
    """
    n, k = inst.graph.n, inst.k
    limit = _guard_limit(PLACEMENT_GUARD)
    if n**k > limit:
        raise GuardError(
            f"oracle_solve would enumerate n^k = {n}**{k} placements, over the limit {limit}"
        )
    sigma = inst.sigma
    dist_rows = [inst.graph.distances_from(v) for v in sigma]
    feasible_sets: dict[frozenset[int], bool] = {}
    best_cost: int | None = None
    best_mu: tuple[int, ...] | None = None
    for mu in itertools.product(range(n), repeat=k):
        key = frozenset(mu)
        ok = feasible_sets.get(key)
        if ok is None:
            ok = predicate_holds(inst, key)
            feasible_sets[key] = ok
        if not ok:
            continue
        if measure is Measure.NUM:
            cost = sum(1 for a, b in zip(sigma, mu) if a != b)
        elif measure is Measure.MAX:
            cost = max(dist_rows[p][v] for p, v in enumerate(mu))
        else:
            cost = sum(dist_rows[p][v] for p, v in enumerate(mu))
        if best_cost is None or cost < best_cost:
            best_cost = cost
            best_mu = mu
    if best_mu is None:
        return Infeasible("no placement satisfies the goal")
    return SolveReport(Solution(best_mu), best_cost, measure, Guarantee.exact(), "oracle-enumeration")


def _independent_sets_of_size(inst: Instance, k: int):
    """Yield independent k-subsets (ascending tuples) of the instance graph."""
    g = inst.graph
    adj_mask = [0] * g.n
    for u, v in g.edges:
        adj_mask[u] |= 1 << v
        adj_mask[v] |= 1 << u
    chosen: list[int] = []

    def extend(start: int, blocked: int):
        if len(chosen) == k:
            yield tuple(chosen)
            return
        # Not enough vertices left to finish the set.
        for v in range(start, g.n - (k - len(chosen)) + 1):
            if blocked & (1 << v):
                continue
            chosen.append(v)
            yield from extend(v + 1, blocked | adj_mask[v])
            chosen.pop()

    yield from extend(0, 0)


def _bottleneck_assignment_cost(dist_matrix: list[list[int]], upper: int) -> int | None:
    """Smallest threshold admitting a perfect pebble-to-slot matching, or None.

    Only thresholds strictly below ``upper`` are interesting; returns None when
    the best possible is >= upper.
    """
    k = len(dist_matrix)
    values = sorted({d for row in dist_matrix for d in row if d < upper})
    if not values:
        return None

    def saturates(threshold: int) -> bool:
        edges = tuple(
            (p, i)
            for p in range(k)
            for i in range(k)
            if dist_matrix[p][i] <= threshold
        )
        matching = max_bipartite_matching(BipartiteGraph(k, k, edges))
        return len(matching) == k

    lo, hi = 0, len(values) - 1
    if not saturates(values[hi]):
        return None
    while lo < hi:
        mid = (lo + hi) // 2
        if saturates(values[mid]):
            hi = mid
        else:
            lo = mid + 1
    return values[lo]


def oracle_ind(inst: Instance, measure: Measure) -> SolveReport | Infeasible:
    """Exact optimum for independence goals by enumerating independent k-sets.

    For each candidate set the best pebble-to-vertex assignment is computed
    per measure: an exact min-cost assignment for the total, a threshold
    search with matchings for the maximum, and a stay-put count for the
    number of moves.  Guarded by C(n, k) against the subset limit.
    """
    if inst.goal.kind is not GoalKind.IND:
        raise SolverError("oracle_ind requires an independence goal")
    g, k = inst.graph, inst.k
    if k > g.n:
        return Infeasible(f"{k} pebbles cannot occupy {g.n} distinct vertices")
    limit = _guard_limit(SUBSET_GUARD)
    if comb(g.n, k) > limit:
        raise GuardError(
            f"oracle_ind would scan C({g.n},{k}) = {comb(g.n, k)} subsets, over the limit {limit}"
        )
    sigma = inst.sigma
    dist_rows = [g.distances_from(v) for v in sigma]
    has_pebble = [False] * g.n
    for v in sigma:
        has_pebble[v] = True

    best_cost: int | None = None
    best_set: tuple[int, ...] | None = None
    for u_tuple in _independent_sets_of_size(inst, k):
        if measure is Measure.NUM:
            cost = k - sum(1 for v in u_tuple if has_pebble[v])
        elif measure is Measure.MAX:
            lower = max(min(dist_rows[p][v] for v in u_tuple) for p in range(k))
            if best_cost is not None and lower >= best_cost:
                continue
            matrix = [[dist_rows[p][v] for v in u_tuple] for p in range(k)]
            upper = best_cost if best_cost is not None else max(max(r) for r in matrix) + 1
            found = _bottleneck_assignment_cost(matrix, upper)
            if found is None:
                continue
            cost = found
        else:
            lower = sum(min(dist_rows[p][v] for v in u_tuple) for p in range(k))
            if best_cost is not None and lower >= best_cost:
                continue
            matrix = [[dist_rows[p][v] for v in u_tuple] for p in range(k)]
            rows, cols = linear_sum_assignment(matrix)
            cost = int(sum(matrix[r][c] for r, c in zip(rows, cols)))
        if best_cost is None or cost < best_cost:
            best_cost = cost
            best_set = u_tuple
            if best_cost == 0:
                break
    if best_set is None:
        return Infeasible(f"the graph has no independent set of size {k}")
    mu = _assign_to_set(inst, dist_rows, best_set, measure)
    report = make_report(inst, mu, measure, Guarantee.exact(), "oracle-independent-sets")
    assert report.cost == best_cost
    return report


def _assign_to_set(
    inst: Instance,
    dist_rows: list[tuple[int, ...]],
    u_tuple: tuple[int, ...],
    measure: Measure,
) -> list[int]:
    """An optimal one-to-one assignment of pebbles onto the chosen set."""
    k = inst.k
    matrix = [[dist_rows[p][v] for v in u_tuple] for p in range(k)]
    if measure is Measure.SUM:
        rows, cols = linear_sum_assignment(matrix)
        mu = [0] * k
        for r, c in zip(rows, cols):
            mu[r] = u_tuple[c]
        return mu
    if measure is Measure.MAX:
        threshold = _bottleneck_assignment_cost(matrix, max(max(r) for r in matrix) + 1)
        edges = tuple(
            (p, i) for p in range(k) for i in range(k) if matrix[p][i] <= threshold
        )
        matching = max_bipartite_matching(BipartiteGraph(k, k, edges))
        mu = [0] * k
        for p, i in matching.pairs:
            mu[p] = u_tuple[i]
        return mu
    # Number of moves: keep one pebble in place per occupied slot, move the rest.
    mu = [-1] * k
    taken = set()
    remaining_slots = []
    for v in u_tuple:
        keeper = next(
            (p for p in range(k) if inst.sigma[p] == v and p not in taken), None
        )
        if keeper is None:
            remaining_slots.append(v)
        else:
            taken.add(keeper)
            mu[keeper] = v
    movers = [p for p in range(k) if mu[p] == -1]
    for p, v in zip(movers, remaining_slots):
        mu[p] = v
    return mu


def oracle_bounded(inst: Instance, radius: int, measure: Measure = Measure.MAX) -> Solution | Infeasible:
    """Any feasible solution moving every pebble at most ``radius`` hops, if one exists.

    A positive answer certifies that the optimal maximum movement is at most
    ``radius``.  Guarded by the product of the per-pebble ball sizes.
    """
    if measure is not Measure.MAX:
        raise SolverError("oracle_bounded only answers maximum-movement questions")
    if radius < 0:
        raise SolverError("radius must be non-negative")
    g = inst.graph
    balls = []
    product = 1
    limit = _guard_limit(BALL_GUARD)
    for v in inst.sigma:
        dist = g.distances_from(v)
        ball = [u for u in range(g.n) if dist[u] <= radius]
        product *= len(ball)
        if product > limit:
            raise GuardError(
                f"oracle_bounded ball product exceeds the limit {limit} at radius {radius}"
            )
        balls.append(ball)
    feasible_sets: dict[frozenset[int], bool] = {}
    for mu in itertools.product(*balls):
        key = frozenset(mu)
        ok = feasible_sets.get(key)
        if ok is None:
            ok = predicate_holds(inst, key)
            feasible_sets[key] = ok
        if ok:
            return Solution(mu)
    return Infeasible(f"no solution moves every pebble at most {radius} hops")
