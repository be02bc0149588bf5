"""Undirected connected graphs with the services every solver needs.

Vertices are dense integer ids ``0..n-1``.  Graphs are immutable after
construction and safe to share across threads; the per-source distance
cache is guarded by a lock.
"""

from __future__ import annotations

import threading
from collections import deque
from typing import Iterable, Sequence

from .errors import InstanceError


class Graph:
    """Loop-free connected undirected graph on vertices ``0..n-1``.

    Connectivity is enforced at construction; disconnected input raises
    :class:`InstanceError`.
    """

    __slots__ = ("n", "edges", "adj", "_dist", "_dist_lock", "_diameter")

    def __init__(self, vertex_count: int, edges: Iterable[tuple[int, int]]):
        if vertex_count < 1:
            raise InstanceError("graph needs at least one vertex")
        self.n = vertex_count
        seen: set[tuple[int, int]] = set()
        adj: list[list[int]] = [[] for _ in range(vertex_count)]
        for u, v in edges:
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise InstanceError(f"edge ({u},{v}) out of range for n={vertex_count}")
            if u == v:
                raise InstanceError(f"self-loop at vertex {u}")
            key = (u, v) if u < v else (v, u)
            if key in seen:
                raise InstanceError(f"duplicate edge ({key[0]},{key[1]})")
            seen.add(key)
            adj[u].append(v)
            adj[v].append(u)
        self.edges = frozenset(seen)
        self.adj = tuple(tuple(sorted(nb)) for nb in adj)
        self._dist: dict[int, tuple[int, ...]] = {}
        self._dist_lock = threading.Lock()
        self._diameter: int | None = None
        if not self._fully_connected():
            raise InstanceError("graph is not connected")

    def _fully_connected(self) -> bool:
        seen = [False] * self.n
        seen[0] = True
        queue = deque([0])
        count = 1
        while queue:
            u = queue.popleft()
            for v in self.adj[u]:
                if not seen[v]:
                    seen[v] = True
                    count += 1
                    queue.append(v)
        return count == self.n

    def has_edge(self, u: int, v: int) -> bool:
        key = (u, v) if u < v else (v, u)
        return key in self.edges

    def degree(self, u: int) -> int:
        return len(self.adj[u])

    def distances_from(self, source: int) -> tuple[int, ...]:
        """Hop distances from ``source`` to every vertex (memoized)."""
        if not 0 <= source < self.n:
            raise InstanceError(f"source {source} out of range for n={self.n}")
        cached = self._dist.get(source)
        if cached is not None:
            return cached
        dist = bfs_distances(self, source)
        with self._dist_lock:
            self._dist.setdefault(source, dist)
        return self._dist[source]

    def distance(self, u: int, v: int) -> int:
        return self.distances_from(u)[v]

    def precompute_all_distances(self) -> None:
        for u in range(self.n):
            self.distances_from(u)

    def diameter(self) -> int:
        if self._diameter is None:
            self._diameter = max(
                max(self.distances_from(u)) for u in range(self.n)
            )
        return self._diameter

    def is_tree(self) -> bool:
        return len(self.edges) == self.n - 1

    def is_path(self) -> bool:
        return self.is_tree() and all(len(nb) <= 2 for nb in self.adj)

    def bipartition(self) -> tuple[set[int], set[int]] | None:
        """Two-coloring sides, or None if the graph has an odd cycle."""
        color = [-1] * self.n
        color[0] = 0
        queue = deque([0])
        while queue:
            u = queue.popleft()
            for v in self.adj[u]:
                if color[v] == -1:
                    color[v] = 1 - color[u]
                    queue.append(v)
                elif color[v] == color[u]:
                    return None
        side0 = {u for u in range(self.n) if color[u] == 0}
        return side0, set(range(self.n)) - side0

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={len(self.edges)})"


def bfs_distances(g: Graph, source: int) -> tuple[int, ...]:
    """Exact hop distances from ``source``; all finite since g is connected."""
    if not 0 <= source < g.n:
        raise InstanceError(f"source {source} out of range for n={g.n}")
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u]
        for v in g.adj[u]:
            if dist[v] < 0:
                dist[v] = du + 1
                queue.append(v)
    return tuple(dist)


def is_connected_subset(g: Graph, u_set: Iterable[int]) -> bool:
    """True iff the subgraph induced by ``u_set`` is connected (empty set is False)."""
    members = set(u_set)
    if not members:
        return False
    if any(not 0 <= u < g.n for u in members):
        raise InstanceError("subset contains out-of-range vertices")
    start = next(iter(members))
    seen = {start}
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v in g.adj[u]:
            if v in members and v not in seen:
                seen.add(v)
                queue.append(v)
    return len(seen) == len(members)


class RootedTree:
    """A tree rooted at ``root``: parent array, children lists, post-order.

    ``vertices`` may restrict the tree to a connected subset of ``g`` (used by
    the recursive solvers); by default the whole graph is taken and must be a
    tree.
    """

    __slots__ = ("graph", "root", "vertices", "parent", "children", "postorder")

    def __init__(self, g: Graph, root: int, vertices: Iterable[int] | None = None):
        allowed = set(range(g.n)) if vertices is None else set(vertices)
        if root not in allowed:
            raise InstanceError(f"root {root} not among the tree's vertices")
        parent: dict[int, int] = {root: root}
        children: dict[int, list[int]] = {u: [] for u in allowed}
        order = [root]
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in g.adj[u]:
                if v in allowed and v not in parent:
                    parent[v] = u
                    children[u].append(v)
                    order.append(v)
                    queue.append(v)
        if len(parent) != len(allowed):
            raise InstanceError("tree vertices are not connected")
        edge_count = sum(
            1
            for u in allowed
            for v in g.adj[u]
            if v in allowed and u < v
        )
        if edge_count != len(allowed) - 1:
            raise InstanceError("induced subgraph is not a tree")
        self.graph = g
        self.root = root
        self.vertices = frozenset(allowed)
        self.parent = parent
        self.children = {u: tuple(kids) for u, kids in children.items()}
        # BFS order reversed visits children before parents.
        self.postorder = tuple(reversed(order))

    def __len__(self) -> int:
        return len(self.vertices)


def centroid(g: Graph, vertices: Iterable[int] | None = None) -> int:
    """Vertex whose removal leaves components of at most half the tree's size.

    Ties are broken by smallest vertex id.  Raises if the (sub)graph is not a
    tree.
    """
    allowed = sorted(range(g.n)) if vertices is None else sorted(set(vertices))
    tree = RootedTree(g, allowed[0], allowed)
    size = {u: 1 for u in tree.vertices}
    for u in tree.postorder:
        for c in tree.children[u]:
            size[u] += size[c]
    total = len(allowed)
    best_vertex = -1
    best_score = total + 1
    for u in allowed:
        score = total - size[u]
        for c in tree.children[u]:
            score = max(score, size[c])
        if score < best_score:
            best_score = score
            best_vertex = u
    return best_vertex
