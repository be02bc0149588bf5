"""Problem instances, goal predicates, cost measures, and solution validation.

An instance is a connected graph, at least one pebble with a start vertex,
and a goal predicate the set of end vertices must satisfy.  Several pebbles
may share a start vertex; only the independence goal forces distinct end
vertices.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

from .errors import InstanceError
from .graphs import Graph, is_connected_subset


class GoalKind(enum.Enum):
    CON = "con"
    IND = "ind"
    CLIQUE = "clique"
    STCUT = "stcut"


class Measure(enum.Enum):
    SUM = "sum"
    MAX = "max"
    NUM = "num"


@dataclass(frozen=True)
class Goal:
    kind: GoalKind
    s: int | None = None
    t: int | None = None

    def __post_init__(self):
        if self.kind is GoalKind.STCUT:
            if self.s is None or self.t is None:
                raise InstanceError("stcut goal needs both s and t")
            if self.s == self.t:
                raise InstanceError("stcut goal needs distinct s and t")
        elif self.s is not None or self.t is not None:
            raise InstanceError(f"goal {self.kind.value} takes no s/t parameters")


@dataclass(frozen=True)
class Instance:
    graph: Graph
    sigma: tuple[int, ...]
    goal: Goal

    def __post_init__(self):
        if len(self.sigma) < 1:
            raise InstanceError("instance needs at least one pebble")
        n = self.graph.n
        for p, v in enumerate(self.sigma):
            if not 0 <= v < n:
                raise InstanceError(f"pebble {p} starts at out-of-range vertex {v}")
        if self.goal.kind is GoalKind.STCUT:
            for name, v in (("s", self.goal.s), ("t", self.goal.t)):
                if not 0 <= v < n:
                    raise InstanceError(f"goal vertex {name}={v} out of range")

    @property
    def k(self) -> int:
        return len(self.sigma)

    def start_counts(self) -> list[int]:
        """Number of pebbles starting on each vertex."""
        counts = [0] * self.graph.n
        for v in self.sigma:
            counts[v] += 1
        return counts


@dataclass(frozen=True)
class Solution:
    mu: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "mu", tuple(self.mu))

    def end_set(self) -> frozenset[int]:
        return frozenset(self.mu)


class GuaranteeKind(enum.Enum):
    EXACT = "exact"
    ADDITIVE_PLUS_ONE = "additive+1"
    FACTOR = "factor"
    HEURISTIC = "heuristic"


@dataclass(frozen=True)
class Guarantee:
    kind: GuaranteeKind
    factor: Fraction | None = None

    @staticmethod
    def exact() -> "Guarantee":
        return Guarantee(GuaranteeKind.EXACT)

    @staticmethod
    def additive_plus_one() -> "Guarantee":
        return Guarantee(GuaranteeKind.ADDITIVE_PLUS_ONE)

    @staticmethod
    def of_factor(rho: int | Fraction) -> "Guarantee":
        return Guarantee(GuaranteeKind.FACTOR, Fraction(rho))

    @staticmethod
    def heuristic() -> "Guarantee":
        return Guarantee(GuaranteeKind.HEURISTIC)

    def label(self) -> str:
        if self.kind is GuaranteeKind.FACTOR:
            f = self.factor
            text = str(f.numerator) if f.denominator == 1 else f"{f.numerator}/{f.denominator}"
            return f"factor:{text}"
        return self.kind.value


@dataclass(frozen=True)
class SolveReport:
    solution: Solution
    cost: int
    measure: Measure
    guarantee: Guarantee
    method: str


@dataclass(frozen=True)
class Infeasible:
    """Normal no-solution outcome (not an error)."""

    reason: str = ""


def predicate_holds(inst: Instance, u_set: Sequence[int] | frozenset[int] | set[int]) -> bool:
    """Whether ``u_set`` satisfies the instance's goal predicate (total function)."""
    members = set(u_set)
    g = inst.graph
    if any(not 0 <= u < g.n for u in members):
        return False
    kind = inst.goal.kind
    if kind is GoalKind.CON:
        return bool(members) and is_connected_subset(g, members)
    if kind is GoalKind.IND:
        if len(members) != inst.k:
            return False
        return all(not g.has_edge(u, v) for u in members for v in members if u < v)
    if kind is GoalKind.CLIQUE:
        return all(g.has_edge(u, v) for u in members for v in members if u < v)
    # stcut: s and t stay outside, and removing the set disconnects them.
    s, t = inst.goal.s, inst.goal.t
    if s in members or t in members:
        return False
    seen = {s}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for v in g.adj[u]:
            if v not in members and v not in seen:
                if v == t:
                    return False
                seen.add(v)
                queue.append(v)
    return True


def solution_cost(inst: Instance, sol: Solution, measure: Measure) -> int:
    """The measure of ``sol``, exactly as defined (no feasibility check)."""
    g = inst.graph
    if measure is Measure.NUM:
        return sum(1 for a, b in zip(inst.sigma, sol.mu) if a != b)
    dists = (g.distance(a, b) for a, b in zip(inst.sigma, sol.mu))
    return max(dists) if measure is Measure.MAX else sum(dists)


def validate(inst: Instance, sol: Solution) -> bool:
    """True iff ``sol`` is feasible: right arity, in range, predicate satisfied.

    For the independence goal the end vertices must also be pairwise distinct,
    which the size check inside the predicate enforces.
    """
    if len(sol.mu) != inst.k:
        return False
    n = inst.graph.n
    if any(not 0 <= v < n for v in sol.mu):
        return False
    return predicate_holds(inst, sol.end_set())


def make_report(
    inst: Instance,
    mu: Sequence[int],
    measure: Measure,
    guarantee: Guarantee,
    method: str,
) -> SolveReport:
    """Build a report whose cost is recomputed from the solution itself."""
    sol = Solution(tuple(mu))
    cost = solution_cost(inst, sol, measure)
    return SolveReport(sol, cost, measure, guarantee, method)
