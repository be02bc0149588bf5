"""Exact max-movement independence solver for paths.

Positions are measured as distance from one endpoint, so the graph never
needs to be materialized; this keeps million-vertex instances cheap.  A
greedy sweep packs pebbles as close to the near endpoint as a movement bound
allows, and a binary search finds the smallest workable bound.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import InstanceError, SolverError
from .graphs import Graph
from .model import (
    Goal,
    GoalKind,
    Guarantee,
    Infeasible,
    Instance,
    Measure,
    Solution,
    SolveReport,
)


@dataclass(frozen=True)
class PathInstance:
    """A path of ``n`` vertices with pebbles at sorted positions 0..n-1."""

    n: int
    pebbles: tuple[int, ...]

    def __post_init__(self):
        if self.n < 1:
            raise InstanceError("path needs at least one vertex")
        if not self.pebbles:
            raise InstanceError("instance needs at least one pebble")
        if any(not 0 <= p < self.n for p in self.pebbles):
            raise InstanceError("pebble position out of range")
        if any(a > b for a, b in zip(self.pebbles, self.pebbles[1:])):
            raise InstanceError("pebble positions must be sorted")

    @property
    def k(self) -> int:
        return len(self.pebbles)


def greedy_feasible(pi: PathInstance, z: int) -> Solution | Infeasible:
    """A solution with pairwise gaps >= 2 moving nobody more than ``z``, if any.

    Pebbles are taken in sorted order; each goes to the lowest position that
    respects both the previous pebble and its own movement budget.
    """
    if z < 0:
        raise SolverError("movement bound must be non-negative")
    mu = []
    next_free = 0
    for position in pi.pebbles:
        h = max(next_free, position - z)
        if h >= pi.n or h > position + z:
            return Infeasible(f"no placement with maximum movement {z}")
        mu.append(h)
        next_free = h + 2
    return Solution(tuple(mu))


def solve_ind_max_path(pi: PathInstance) -> SolveReport | Infeasible:
    """Exact minimum of the maximum movement onto an independent set of a path.

    Feasibility is monotone in the movement bound, so the smallest workable
    bound is found by binary search over 0..n-1.
    """
    if pi.k > (pi.n + 1) // 2:
        return Infeasible(
            f"{pi.k} pebbles cannot sit pairwise non-adjacent on {pi.n} path vertices"
        )
    lo, hi = 0, pi.n - 1
    best = greedy_feasible(pi, hi)
    if isinstance(best, Infeasible):
        return best
    while lo < hi:
        mid = (lo + hi) // 2
        attempt = greedy_feasible(pi, mid)
        if isinstance(attempt, Infeasible):
            lo = mid + 1
        else:
            hi = mid
            best = attempt
    cost = max(abs(a - b) for a, b in zip(pi.pebbles, best.mu))
    assert cost == lo
    return SolveReport(best, cost, Measure.MAX, Guarantee.exact(), "path-greedy-packing")


def path_layout(g: Graph) -> list[int] | None:
    """Vertices of a path graph ordered from its lowest-id endpoint, else None."""
    if not g.is_path():
        return None
    if g.n == 1:
        return [0]
    endpoints = [v for v in range(g.n) if g.degree(v) == 1]
    start = min(endpoints)
    order = [start]
    prev = -1
    while len(order) < g.n:
        nxt = next(v for v in g.adj[order[-1]] if v != prev)
        prev = order[-1]
        order.append(nxt)
    return order


def solve_ind_max_on_path_instance(inst: Instance) -> SolveReport | Infeasible:
    """Run the path solver on a path-shaped Instance and map positions back."""
    if inst.goal.kind is not GoalKind.IND:
        raise SolverError("solver expects goal ind")
    order = path_layout(inst.graph)
    if order is None:
        raise SolverError("graph is not a path")
    position_of = {v: i for i, v in enumerate(order)}
    ranked = sorted(range(inst.k), key=lambda p: (position_of[inst.sigma[p]], p))
    pi = PathInstance(inst.graph.n, tuple(position_of[inst.sigma[p]] for p in ranked))
    outcome = solve_ind_max_path(pi)
    if isinstance(outcome, Infeasible):
        return outcome
    mu = [0] * inst.k
    for slot, p in enumerate(ranked):
        mu[p] = order[outcome.solution.mu[slot]]
    return SolveReport(
        Solution(tuple(mu)), outcome.cost, Measure.MAX, Guarantee.exact(), outcome.method
    )
