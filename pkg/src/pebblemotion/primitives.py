"""Classical subroutines used by the approximation solvers.

Everything here is deterministic: vertices and edges are always processed in
ascending order, so repeated runs return identical structures.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import GuardError, InstanceError, NoVertexCutError
from .graphs import Graph


@dataclass(frozen=True)
class BipartiteGraph:
    left_count: int
    right_count: int
    edges: tuple[tuple[int, int], ...]

    def __post_init__(self):
        seen = set()
        for a, b in self.edges:
            if not (0 <= a < self.left_count and 0 <= b < self.right_count):
                raise InstanceError(f"bipartite edge ({a},{b}) out of range")
            if (a, b) in seen:
                raise InstanceError(f"duplicate bipartite edge ({a},{b})")
            seen.add((a, b))

    def left_adj(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.left_count)]
        for a, b in self.edges:
            adj[a].append(b)
        for row in adj:
            row.sort()
        return adj


@dataclass(frozen=True)
class Matching:
    pairs: frozenset[tuple[int, int]]

    def __len__(self) -> int:
        return len(self.pairs)

    def left_to_right(self) -> dict[int, int]:
        return {a: b for a, b in self.pairs}


def max_bipartite_matching(h: BipartiteGraph) -> Matching:
    """Maximum-cardinality matching by repeated augmenting paths, O(V*E)."""
    adj = h.left_adj()
    match_right = [-1] * h.right_count

    def try_augment(a: int, visited: list[bool]) -> bool:
        for b in adj[a]:
            if visited[b]:
                continue
            visited[b] = True
            if match_right[b] == -1 or try_augment(match_right[b], visited):
                match_right[b] = a
                return True
        return False

    for a in range(h.left_count):
        try_augment(a, [False] * h.right_count)
    pairs = frozenset((a, b) for b, a in enumerate(match_right) if a != -1)
    return Matching(pairs)


def _koenig_cover(h: BipartiteGraph, matching: Matching) -> tuple[set[int], set[int]]:
    """Minimum vertex cover (left part, right part) from a maximum matching."""
    adj = h.left_adj()
    match_left = {a: b for a, b in matching.pairs}
    match_right = {b: a for a, b in matching.pairs}
    visited_left = [False] * h.left_count
    visited_right = [False] * h.right_count
    queue = deque(a for a in range(h.left_count) if a not in match_left)
    for a in queue:
        visited_left[a] = True
    while queue:
        a = queue.popleft()
        for b in adj[a]:
            if visited_right[b] or match_left.get(a) == b:
                continue
            visited_right[b] = True
            owner = match_right.get(b)
            if owner is not None and not visited_left[owner]:
                visited_left[owner] = True
                queue.append(owner)
    cover_left = {a for a in range(h.left_count) if not visited_left[a]}
    cover_right = {b for b in range(h.right_count) if visited_right[b]}
    return cover_left, cover_right


def max_independent_set_bipartite(
    g: Graph, bipartition: tuple[Iterable[int], Iterable[int]]
) -> set[int]:
    """Maximum independent set of a bipartite graph via the matching dual.

    The returned set has exactly ``n - |maximum matching|`` vertices.
    Raises if the claimed bipartition has an internal edge or misses vertices.
    """
    side_a = sorted(set(bipartition[0]))
    side_b = sorted(set(bipartition[1]))
    if set(side_a) & set(side_b) or len(side_a) + len(side_b) != g.n:
        raise InstanceError("bipartition must split all vertices into two disjoint sides")
    index_a = {u: i for i, u in enumerate(side_a)}
    index_b = {u: i for i, u in enumerate(side_b)}
    edges = []
    for u, v in sorted(g.edges):
        if u in index_a and v in index_b:
            edges.append((index_a[u], index_b[v]))
        elif v in index_a and u in index_b:
            edges.append((index_a[v], index_b[u]))
        else:
            raise InstanceError(f"edge ({u},{v}) lies inside one side of the bipartition")
    h = BipartiteGraph(len(side_a), len(side_b), tuple(edges))
    matching = max_bipartite_matching(h)
    cover_left, cover_right = _koenig_cover(h, matching)
    result = {side_a[i] for i in range(len(side_a)) if i not in cover_left}
    result |= {side_b[i] for i in range(len(side_b)) if i not in cover_right}
    return result


def vertex_cover_2approx(vertex_count: int, edges: Iterable[tuple[int, int]]) -> set[int]:
    """Endpoints of a greedy maximal matching: a cover within twice the optimum."""
    cover: set[int] = set()
    normalized = sorted((min(u, v), max(u, v)) for u, v in edges)
    for u, v in normalized:
        if u not in cover and v not in cover:
            cover.add(u)
            cover.add(v)
    return cover


def max_weight_clique(
    vertex_count: int,
    edges: Iterable[tuple[int, int]],
    weights: Sequence[int],
) -> set[int]:
    """Maximum-weight clique by branch and bound; exact, meant for small n.

    Vertices of weight zero are never part of the result.  Weights must be
    non-negative.
    """
    if len(weights) != vertex_count:
        raise InstanceError("one weight per vertex required")
    if any(w < 0 for w in weights):
        raise InstanceError("clique weights must be non-negative")
    adj_mask = [0] * vertex_count
    for u, v in edges:
        adj_mask[u] |= 1 << v
        adj_mask[v] |= 1 << u
    # Positive-weight vertices by descending weight, id as tie-break.
    order = sorted(
        (v for v in range(vertex_count) if weights[v] > 0),
        key=lambda v: (-weights[v], v),
    )
    suffix_weight = [0] * (len(order) + 1)
    for i in range(len(order) - 1, -1, -1):
        suffix_weight[i] = suffix_weight[i + 1] + weights[order[i]]

    best_weight = 0
    best_clique: set[int] = set()

    def branch(i: int, chosen: list[int], chosen_weight: int, allowed: int) -> None:
        nonlocal best_weight, best_clique
        if chosen_weight > best_weight:
            best_weight = chosen_weight
            best_clique = set(chosen)
        if i == len(order) or chosen_weight + suffix_weight[i] <= best_weight:
            return
        v = order[i]
        if allowed & (1 << v):
            chosen.append(v)
            branch(i + 1, chosen, chosen_weight + weights[v], allowed & adj_mask[v])
            chosen.pop()
        # Skipping v can still reach best_weight through lighter vertices.
        branch(i + 1, chosen, chosen_weight, allowed)

    branch(0, [], 0, (1 << vertex_count) - 1)
    return best_clique


def min_st_vertex_cut(g: Graph, s: int, t: int) -> set[int]:
    """Minimum set of vertices (excluding s, t) whose removal separates s from t.

    Found by splitting each vertex into an in/out pair with a unit-capacity
    internal arc and running BFS-augmented max-flow.  Raises
    :class:`NoVertexCutError` when s and t are adjacent.
    """
    if s == t:
        raise InstanceError("cut terminals must be distinct")
    if g.has_edge(s, t):
        raise NoVertexCutError(f"vertices {s} and {t} are adjacent; no vertex cut exists")
    big = g.n + 1
    node_count = 2 * g.n  # in(v) = 2v, out(v) = 2v + 1

    to: list[int] = []
    cap: list[int] = []
    head: list[list[int]] = [[] for _ in range(node_count)]

    def add_arc(a: int, b: int, c: int) -> None:
        head[a].append(len(to))
        to.append(b)
        cap.append(c)
        head[b].append(len(to))
        to.append(a)
        cap.append(0)

    for v in range(g.n):
        add_arc(2 * v, 2 * v + 1, big if v in (s, t) else 1)
    for u, v in sorted(g.edges):
        add_arc(2 * u + 1, 2 * v, big)
        add_arc(2 * v + 1, 2 * u, big)

    source, sink = 2 * s + 1, 2 * t
    while True:
        prev_arc = [-1] * node_count
        prev_arc[source] = -2
        queue = deque([source])
        while queue and prev_arc[sink] == -1:
            a = queue.popleft()
            for e in head[a]:
                b = to[e]
                if cap[e] > 0 and prev_arc[b] == -1:
                    prev_arc[b] = e
                    queue.append(b)
        if prev_arc[sink] == -1:
            break
        bottleneck = big
        b = sink
        while b != source:
            e = prev_arc[b]
            bottleneck = min(bottleneck, cap[e])
            b = to[e ^ 1]
        b = sink
        while b != source:
            e = prev_arc[b]
            cap[e] -= bottleneck
            cap[e ^ 1] += bottleneck
            b = to[e ^ 1]

    reachable = [False] * node_count
    reachable[source] = True
    queue = deque([source])
    while queue:
        a = queue.popleft()
        for e in head[a]:
            if cap[e] > 0 and not reachable[to[e]]:
                reachable[to[e]] = True
                queue.append(to[e])
    return {
        v
        for v in range(g.n)
        if v not in (s, t) and reachable[2 * v] and not reachable[2 * v + 1]
    }
