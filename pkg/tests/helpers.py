"""Shared random generators and brute-force reference implementations.

Everything here is deliberately independent of the package's algorithms:
subset scans and exhaustive recursion only, so the tests compare two
unrelated routes to the same answer.
"""

from __future__ import annotations

import bisect
import itertools
import random
from collections import deque

from pebblemotion import Graph
from pebblemotion.model import GoalKind, Instance, Measure
from pebblemotion.primitives import BipartiteGraph


def path_graph(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def star_graph(leaves: int) -> Graph:
    return Graph(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def random_tree(rng: random.Random, n: int) -> Graph:
    if n == 1:
        return Graph(1, [])
    if n == 2:
        return Graph(2, [(0, 1)])
    prufer = [rng.randrange(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in prufer:
        degree[v] += 1
    edges = []
    leaves = sorted(v for v in range(n) if degree[v] == 1)
    for v in prufer:
        leaf = leaves.pop(0)
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            bisect.insort(leaves, v)
    edges.append((leaves[0], leaves[1]))
    return Graph(n, edges)


def random_connected(rng: random.Random, n: int, extra_edges: int) -> Graph:
    tree = random_tree(rng, n)
    edges = set(tree.edges)
    candidates = [(u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges]
    rng.shuffle(candidates)
    edges.update(candidates[:extra_edges])
    return Graph(n, sorted(edges))


def random_bipartite_connected(rng: random.Random, n: int, chords: int) -> Graph:
    """A connected bipartite graph: a random tree plus cross-side chords."""
    g = random_tree(rng, n)
    side_a, side_b = g.bipartition()
    candidates = [
        (min(u, v), max(u, v))
        for u in side_a
        for v in side_b
        if u != v and not g.has_edge(u, v)
    ]
    rng.shuffle(candidates)
    edges = sorted(set(g.edges) | set(candidates[:chords]))
    return Graph(n, edges)


def normalized(edges) -> set[tuple[int, int]]:
    return {(min(u, v), max(u, v)) for u, v in edges}


def brute_max_matching_size(h: BipartiteGraph) -> int:
    edges = list(h.edges)
    best = 0

    def grow(i: int, used_left: frozenset, used_right: frozenset, size: int) -> None:
        nonlocal best
        best = max(best, size)
        if i == len(edges):
            return
        grow(i + 1, used_left, used_right, size)
        a, b = edges[i]
        if a not in used_left and b not in used_right:
            grow(i + 1, used_left | {a}, used_right | {b}, size + 1)

    grow(0, frozenset(), frozenset(), 0)
    return best


def brute_max_independent_set_size(n: int, edges) -> int:
    es = normalized(edges)
    best = 0
    for mask in range(1 << n):
        verts = [v for v in range(n) if mask >> v & 1]
        if all((a, b) not in es for i, a in enumerate(verts) for b in verts[i + 1 :]):
            best = max(best, len(verts))
    return best


def brute_min_vertex_cover(n: int, edges) -> int:
    es = normalized(edges)
    for size in range(n + 1):
        for combo in itertools.combinations(range(n), size):
            chosen = set(combo)
            if all(u in chosen or v in chosen for u, v in es):
                return size
    return n


def brute_max_weight_clique(n: int, edges, weights) -> int:
    es = normalized(edges)
    best = 0
    for mask in range(1 << n):
        verts = [v for v in range(n) if mask >> v & 1]
        if all((a, b) in es for i, a in enumerate(verts) for b in verts[i + 1 :]):
            best = max(best, sum(weights[v] for v in verts))
    return best


def brute_min_vertex_cut_size(g: Graph, s: int, t: int) -> int | None:
    """Smallest separating subset by scanning all subsets, or None if s,t adjacent."""
    if g.has_edge(s, t):
        return None
    others = [v for v in range(g.n) if v not in (s, t)]
    for size in range(len(others) + 1):
        for combo in itertools.combinations(others, size):
            removed = set(combo)
            seen = {s}
            queue = deque([s])
            reached = False
            while queue and not reached:
                u = queue.popleft()
                for v in g.adj[u]:
                    if v in removed or v in seen:
                        continue
                    if v == t:
                        reached = True
                        break
                    seen.add(v)
                    queue.append(v)
            if not reached:
                return size
    return len(others)


def has_dominating_clique(g: Graph) -> bool:
    for size in range(1, g.n + 1):
        for combo in itertools.combinations(range(g.n), size):
            chosen = set(combo)
            if not all(g.has_edge(a, b) for a in chosen for b in chosen if a < b):
                continue
            if all(v in chosen or any(g.has_edge(v, u) for u in chosen) for v in range(g.n)):
                return True
    return False


def clique_opt_by_subsets(inst: Instance, measure: Measure) -> int:
    """Exact clique-goal optimum by scanning candidate end sets.

    For a fixed clique of end vertices, each pebble independently takes its
    nearest member (total/max) or stays iff it already sits on one (count).
    """
    assert inst.goal.kind is GoalKind.CLIQUE
    g = inst.graph
    best = None
    for mask in range(1, 1 << g.n):
        verts = [v for v in range(g.n) if mask >> v & 1]
        if any(not g.has_edge(a, b) for i, a in enumerate(verts) for b in verts[i + 1 :]):
            continue
        if measure is Measure.NUM:
            cost = sum(1 for s in inst.sigma if s not in verts)
        elif measure is Measure.MAX:
            cost = max(min(g.distance(s, v) for v in verts) for s in inst.sigma)
        else:
            cost = sum(min(g.distance(s, v) for v in verts) for s in inst.sigma)
        if best is None or cost < best:
            best = cost
    return best


def brute_distribution(rows, budget: int, mode: str) -> float:
    """Reference for the pebble-split DP: enumerate every allocation vector."""
    best = float("inf")
    for alloc in itertools.product(range(budget + 1), repeat=len(rows)):
        total = sum(alloc)
        if mode == "exactly" and total != budget:
            continue
        if mode == "at-most" and total > budget:
            continue
        cost = sum(row[j] for row, j in zip(rows, alloc))
        best = min(best, cost)
    return best
