"""Cheapest split of a pebble budget across an ordered list of cost rows.

This is the inner dynamic program shared by every tree solver: given, for
each child subtree, the cost of hosting 0..budget pebbles, find the cheapest
way to hand out a total of exactly (or at most) ``budget`` pebbles.  Costs
may be ``inf`` for infeasible cells.  Ties are resolved toward the
lexicographically smallest allocation vector.
"""

from __future__ import annotations

import math
from typing import Literal, Sequence

import numpy as np

INF = math.inf

Mode = Literal["exactly", "at-most"]


def min_plus_convolve(a: np.ndarray, b: np.ndarray, out_len: int) -> tuple[np.ndarray, np.ndarray]:
    """vals[h] = min_j a[j] + b[h-j]; args[h] = smallest minimizing j.

    ``a`` and ``b`` are 1-D float arrays; the result is truncated to
    ``out_len`` entries.  Columns where every combination is infinite get
    ``inf`` with an arbitrary arg.
    """
    la, lb = len(a), len(b)
    width = la + lb - 1
    table = np.full((la, width), np.inf)
    cols = np.arange(la)[:, None] + np.arange(lb)[None, :]
    table[np.arange(la)[:, None], cols] = a[:, None] + b[None, :]
    vals = table.min(axis=0)
    args = table.argmin(axis=0)
    return vals[:out_len], args[:out_len]


class DistributionTable:
    """All exact-budget optima for one ordered family of child cost rows.

    ``rows[i][j]`` is the cost of giving ``j`` pebbles to child ``i``.  After
    construction, :meth:`cost_exactly` and :meth:`allocation` answer queries
    for every budget up to the table's limit without recomputation.
    """

    def __init__(self, rows: Sequence[Sequence[float] | np.ndarray], budget: int):
        if budget < 0:
            raise ValueError("budget must be non-negative")
        self.budget = budget
        self.rows = [np.asarray(row, dtype=float)[: budget + 1] for row in rows]
        for i, row in enumerate(self.rows):
            if len(row) != budget + 1:
                padded = np.full(budget + 1, np.inf)
                padded[: len(row)] = row
                self.rows[i] = padded
        # suffix_best[i][h]: cheapest cost of giving h pebbles to children i..end
        base = np.full(budget + 1, np.inf)
        base[0] = 0.0
        suffix = base
        self._choices: list[np.ndarray] = []
        suffixes = [base]
        for row in reversed(self.rows):
            suffix, choice = min_plus_convolve(row, suffix, budget + 1)
            suffixes.append(suffix)
            self._choices.append(choice)
        self._choices.reverse()
        self._exact = suffixes[-1]
        self._prefix_min = np.minimum.accumulate(self._exact)

    def cost_exactly(self, h: int) -> float:
        """Cheapest cost with total handed out equal to h (inf if impossible)."""
        return float(self._exact[h])

    def exact_costs(self) -> np.ndarray:
        return self._exact

    def cost_at_most(self, h: int) -> tuple[float, int]:
        """Cheapest cost with total at most h, and the largest total attaining it."""
        best = float(self._prefix_min[h])
        if best == INF:
            return INF, 0
        candidates = np.flatnonzero(self._exact[: h + 1] == best)
        return best, int(candidates[-1])

    def allocation(self, h: int) -> list[int]:
        """A lexicographically smallest optimal allocation summing to exactly h."""
        if self._exact[h] == np.inf:
            raise ValueError(f"no feasible allocation for budget {h}")
        result = []
        remaining = h
        for choice in self._choices:
            give = int(choice[remaining])
            result.append(give)
            remaining -= give
        assert remaining == 0
        return result


def optimal_distribution(
    child_costs: Sequence[Sequence[float]], budget: int, mode: Mode = "exactly"
) -> tuple[float, list[int]]:
    """One-shot distribution query: (cheapest cost, witnessing allocation).

    Mode ``exactly`` requires the allocation to sum to ``budget``; mode
    ``at-most`` allows any smaller total.  Returns ``(inf, [])`` when every
    allocation is infeasible.
    """
    table = DistributionTable(child_costs, budget)
    if mode == "exactly":
        cost = table.cost_exactly(budget)
        chosen = budget
    elif mode == "at-most":
        cost, chosen = table.cost_at_most(budget)
    else:
        raise ValueError(f"unknown mode {mode!r}")
    if cost == INF:
        return INF, []
    return cost, table.allocation(chosen)
