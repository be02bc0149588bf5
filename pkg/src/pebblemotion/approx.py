"""Approximation algorithms for general graphs, plus one exact clique solver.

Guarantees are attached to every report: within one of the optimum for the
gather-style algorithms, a multiplicative factor for the cover- and
cut-based ones.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import GuardError, NoVertexCutError, SolverError
from .graphs import Graph
from .model import (
    Goal,
    GoalKind,
    Guarantee,
    GuaranteeKind,
    Infeasible,
    Instance,
    Measure,
    Solution,
    SolveReport,
    make_report,
    validate,
)
from .primitives import (
    BipartiteGraph,
    Matching,
    max_bipartite_matching,
    max_independent_set_bipartite,
    max_weight_clique,
    min_st_vertex_cut,
    vertex_cover_2approx,
)

MIS_BRUTE_FORCE_GUARD = 25
MWC_GUARD = 40


def maximum_independent_set(g: Graph) -> set[int]:
    """A maximum independent set: matching-based on bipartite graphs, else brute force.

    The brute-force branch is guarded at MIS_BRUTE_FORCE_GUARD vertices.
    """
    sides = g.bipartition()
    if sides is not None:
        return max_independent_set_bipartite(g, sides)
    if g.n > MIS_BRUTE_FORCE_GUARD:
        raise GuardError(
            f"maximum independent set on a non-bipartite graph is guarded at "
            f"{MIS_BRUTE_FORCE_GUARD} vertices, got {g.n}"
        )
    adj_mask = [0] * g.n
    for u, v in g.edges:
        adj_mask[u] |= 1 << v
        adj_mask[v] |= 1 << u
    best: set[int] = set()
    chosen: list[int] = []

    def extend(v: int, blocked: int) -> None:
        nonlocal best
        if len(chosen) + (g.n - v) <= len(best):
            return
        if v == g.n:
            if len(chosen) > len(best):
                best = set(chosen)
            return
        if not blocked & (1 << v):
            chosen.append(v)
            extend(v + 1, blocked | adj_mask[v])
            chosen.pop()
        extend(v + 1, blocked)

    extend(0, 0)
    return best


def _saturating_matching(
    k: int, targets: Sequence[int], reach: Sequence[Sequence[int]], bound: int
) -> Matching | None:
    edges = tuple(
        (p, i) for p in range(k) for i, _ in enumerate(targets) if reach[p][i] <= bound
    )
    matching = max_bipartite_matching(BipartiteGraph(k, len(targets), edges))
    return matching if len(matching) == k else None


def approx_ind_max(inst: Instance, mis: Iterable[int]) -> SolveReport | Infeasible:
    """Move pebbles onto a supplied maximum independent set, within +1 of optimal.

    The caller provides the maximum independent set (checked for independence,
    trusted for maximality).  The smallest movement bound admitting a
    pebble-saturating matching onto the set is found by binary search, which
    is sound because adding slack only adds matching edges.
    """
    if inst.goal.kind is not GoalKind.IND:
        raise SolverError("solver expects goal ind")
    g, k = inst.graph, inst.k
    targets = sorted(set(mis))
    for i, u in enumerate(targets):
        for v in targets[i + 1 :]:
            if g.has_edge(u, v):
                raise SolverError(f"supplied set is not independent: edge ({u},{v})")
    if k > len(targets):
        return Infeasible(
            f"{k} pebbles cannot fit injectively on an independent set of size {len(targets)}"
        )
    reach = [[g.distance(s, v) for v in targets] for s in inst.sigma]
    lo, hi = 0, g.diameter()
    best = _saturating_matching(k, targets, reach, hi)
    assert best is not None
    while lo < hi:
        mid = (lo + hi) // 2
        attempt = _saturating_matching(k, targets, reach, mid)
        if attempt is None:
            lo = mid + 1
        else:
            hi = mid
            best = attempt
    if lo > 0:
        assert _saturating_matching(k, targets, reach, lo - 1) is None
    mu = [0] * k
    for p, i in best.pairs:
        mu[p] = targets[i]
    return make_report(inst, mu, Measure.MAX, Guarantee.additive_plus_one(), "mis-matching")


def approx_clique_max(inst: Instance) -> SolveReport:
    """Gather all pebbles on the best single vertex: within +1 of optimal."""
    if inst.goal.kind is not GoalKind.CLIQUE:
        raise SolverError("solver expects goal clique")
    g = inst.graph
    best_u = min(
        range(g.n), key=lambda u: (max(g.distance(s, u) for s in inst.sigma), u)
    )
    mu = [best_u] * inst.k
    return make_report(inst, mu, Measure.MAX, Guarantee.additive_plus_one(), "gather-to-vertex")


def _expand_shared_starts(inst: Instance) -> tuple[Graph, list[int], list[int]]:
    """Replace every start vertex holding several pebbles by a clique of copies.

    Returns the expanded graph, the copy-to-original map, and the injective
    expanded start vector (one copy per pebble).
    """
    phi = inst.start_counts()
    copies_of: list[list[int]] = []
    origin: list[int] = []
    for v in range(inst.graph.n):
        count = max(phi[v], 1)
        copies_of.append(list(range(len(origin), len(origin) + count)))
        origin.extend([v] * count)
    edges = []
    for v in range(inst.graph.n):
        group = copies_of[v]
        edges.extend((a, b) for i, a in enumerate(group) for b in group[i + 1 :])
    for u, v in sorted(inst.graph.edges):
        edges.extend((a, b) for a in copies_of[u] for b in copies_of[v])
    expanded = Graph(len(origin), edges)
    next_copy = {v: 0 for v in range(inst.graph.n)}
    expanded_sigma = []
    for s in inst.sigma:
        expanded_sigma.append(copies_of[s][next_copy[s]])
        next_copy[s] += 1
    return expanded, origin, expanded_sigma


def approx_clique_num(inst: Instance) -> SolveReport:
    """Move the fewest pebbles onto a clique, within factor 2 of optimal.

    Shared start vertices are first expanded into cliques of copies so every
    pebble sits alone.  A 2-approximate vertex cover of the complement of the
    occupied subgraph marks the pebbles that move; the rest stay put.
    """
    if inst.goal.kind is not GoalKind.CLIQUE:
        raise SolverError("solver expects goal clique")
    phi = inst.start_counts()
    if max(phi) > 1:
        expanded, origin, expanded_sigma = _expand_shared_starts(inst)
    else:
        expanded, origin, expanded_sigma = inst.graph, list(range(inst.graph.n)), list(inst.sigma)
    occupied = sorted(set(expanded_sigma))
    index = {v: i for i, v in enumerate(occupied)}
    complement_edges = [
        (i, j)
        for i, u in enumerate(occupied)
        for j, v in enumerate(occupied[i + 1 :], start=i + 1)
        if not expanded.has_edge(u, v)
    ]
    cover = vertex_cover_2approx(len(occupied), complement_edges)
    keep = [v for v in occupied if index[v] not in cover]
    if keep:
        anchor = origin[keep[0]]
        keep_set = set(keep)
        mu = [
            origin[s] if s in keep_set else anchor
            for s in expanded_sigma
        ]
    else:
        # Degenerate cover: gather everyone on the busiest start vertex.
        anchor = max(range(inst.graph.n), key=lambda v: (phi[v], -v))
        mu = [anchor] * inst.k
    return make_report(inst, mu, Measure.NUM, Guarantee.of_factor(2), "cover-complement")


def exact_clique_num_mwc(inst: Instance, force: bool = False) -> SolveReport:
    """Exact fewest moves onto a clique via a maximum-weight clique of start counts.

    Branch-and-bound is exponential in the worst case, so the call is guarded
    at MWC_GUARD vertices unless ``force`` is set.
    """
    if inst.goal.kind is not GoalKind.CLIQUE:
        raise SolverError("solver expects goal clique")
    g = inst.graph
    if g.n > MWC_GUARD and not force:
        raise GuardError(
            f"exact clique solver is guarded at {MWC_GUARD} vertices, got {g.n}; "
            "pass force=True to run anyway"
        )
    phi = inst.start_counts()
    clique = max_weight_clique(g.n, sorted(g.edges), phi)
    anchor = min(clique)
    mu = [s if s in clique else anchor for s in inst.sigma]
    return make_report(inst, mu, Measure.NUM, Guarantee.exact(), "max-weight-clique")


def approx_clique_sum(inst: Instance) -> SolveReport:
    """Move pebbles onto a clique with total movement within factor 2 of optimal.

    Candidates: gather everything on each single vertex, and, for every
    occupied vertex, keep it fixed, solve the move-count subproblem among its
    occupied neighbours, and pull everything else in.  The cheapest candidate
    wins.
    """
    if inst.goal.kind is not GoalKind.CLIQUE:
        raise SolverError("solver expects goal clique")
    g, k = inst.graph, inst.k
    phi = inst.start_counts()
    best: tuple[int, list[int]] | None = None

    def consider(mu: list[int]) -> None:
        nonlocal best
        cost = sum(g.distance(s, v) for s, v in zip(inst.sigma, mu))
        if best is None or cost < best[0]:
            best = (cost, mu)

    for u in range(g.n):
        consider([u] * k)
    for u in range(g.n):
        if phi[u] == 0:
            continue
        near = [p for p in range(k) if g.distance(inst.sigma[p], u) == 1]
        if not near:
            continue  # degenerates to the gather-on-u candidate above
        local_vertices = sorted({inst.sigma[p] for p in near} | {u})
        local_index = {v: i for i, v in enumerate(local_vertices)}
        local_edges = [
            (i, j)
            for i, a in enumerate(local_vertices)
            for j, b in enumerate(local_vertices[i + 1 :], start=i + 1)
            if g.has_edge(a, b)
        ]
        sub = Instance(
            Graph(len(local_vertices), local_edges),
            tuple(local_index[inst.sigma[p]] for p in near),
            Goal(GoalKind.CLIQUE),
        )
        sub_report = approx_clique_num(sub)
        mu = [u] * k
        for slot, p in enumerate(near):
            if sub_report.solution.mu[slot] == sub.sigma[slot]:
                mu[p] = inst.sigma[p]
        consider(mu)
    cost, mu = best
    report = make_report(inst, mu, Measure.SUM, Guarantee.of_factor(2), "anchored-gather")
    assert report.cost == cost
    return report


def _cut_assignment(inst: Instance, cut: set[int]) -> list[int]:
    """Every cut vertex gets its nearest free pebble; leftovers go to their nearest cut vertex."""
    g = inst.graph
    mu = [-1] * inst.k
    unassigned = set(range(inst.k))
    for v in sorted(cut):
        p = min(unassigned, key=lambda q: (g.distance(inst.sigma[q], v), q))
        mu[p] = v
        unassigned.discard(p)
    for p in sorted(unassigned):
        mu[p] = min(cut, key=lambda v: (g.distance(inst.sigma[p], v), v))
    return mu


def _approx_stcut(inst: Instance, measure: Measure) -> SolveReport | Infeasible:
    if inst.goal.kind is not GoalKind.STCUT:
        raise SolverError("solver expects goal stcut")
    g, k = inst.graph, inst.k
    factor = Fraction(g.diameter()) if measure is Measure.MAX else Fraction(k * g.diameter())
    guarantee = Guarantee.of_factor(factor)
    if validate(inst, Solution(inst.sigma)):
        return make_report(inst, list(inst.sigma), measure, guarantee, "already-separating")
    try:
        cut = min_st_vertex_cut(g, inst.goal.s, inst.goal.t)
    except NoVertexCutError:
        return Infeasible(
            f"s={inst.goal.s} and t={inst.goal.t} are adjacent; no vertex set separates them"
        )
    if len(cut) > k:
        return Infeasible(
            f"a minimum separator needs {len(cut)} vertices but only {k} pebbles exist"
        )
    mu = _cut_assignment(inst, cut)
    return make_report(inst, mu, measure, guarantee, "cover-min-cut")


def approx_stcut_max(inst: Instance) -> SolveReport | Infeasible:
    """Occupy a minimum separator; maximum movement within factor d of optimal."""
    return _approx_stcut(inst, Measure.MAX)


def approx_stcut_sum(inst: Instance) -> SolveReport | Infeasible:
    """Occupy a minimum separator; total movement within factor k*d of optimal."""
    return _approx_stcut(inst, Measure.SUM)


def stcut_sum_via_num(
    inst: Instance, num_solver: Callable[[Instance], SolveReport | Infeasible]
) -> SolveReport | Infeasible:
    """Re-cost a move-count separator solution under the total-movement measure.

    A solution moving c pebbles has total movement at most c*d, so a
    rho-approximate move-count solver yields a rho*d-approximate total.
    """
    if inst.goal.kind is not GoalKind.STCUT:
        raise SolverError("solver expects goal stcut")
    inner = num_solver(inst)
    if isinstance(inner, Infeasible):
        return inner
    if inner.guarantee.kind is GuaranteeKind.EXACT:
        rho = Fraction(1)
    elif inner.guarantee.kind is GuaranteeKind.FACTOR:
        rho = inner.guarantee.factor
    else:
        rho = None
    guarantee = (
        Guarantee.of_factor(rho * inst.graph.diameter()) if rho is not None else Guarantee.heuristic()
    )
    return make_report(
        inst, list(inner.solution.mu), Measure.SUM, guarantee, f"num-to-sum({inner.method})"
    )
