"""Instance generators that embed other problems as pebble-movement questions.

Each generator returns the instance together with a vertex label map and,
where the construction pins one down, the cost threshold whose attainment
mirrors a yes answer of the embedded problem.  A tiny CNF brute-forcer
provides the independent truth source the tests compare against.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .errors import GuardError, InstanceError, ParseError
from .graphs import Graph
from .model import Goal, GoalKind, Instance, Measure

SAT_VARIABLE_GUARD = 20


@dataclass(frozen=True)
class Cnf3:
    """CNF formula with exactly three (possibly repeated) literals per clause.

    Literals are non-zero signed integers; variable indices run 1..variable_count.
    """

    variable_count: int
    clauses: tuple[tuple[int, int, int], ...]

    def __post_init__(self):
        if self.variable_count < 1:
            raise InstanceError("formula needs at least one variable")
        if not self.clauses:
            raise InstanceError("formula needs at least one clause")
        for clause in self.clauses:
            if len(clause) != 3:
                raise InstanceError(f"clause {clause} must have exactly 3 literals")
            for lit in clause:
                if lit == 0 or not 1 <= abs(lit) <= self.variable_count:
                    raise InstanceError(f"literal {lit} out of range in clause {clause}")

    @classmethod
    def from_clauses(cls, variable_count: int, clauses: Iterable[Sequence[int]]) -> "Cnf3":
        """Build a formula, padding 1- or 2-literal clauses by repeating the last literal."""
        padded = []
        for clause in clauses:
            clause = list(clause)
            if not 1 <= len(clause) <= 3:
                raise InstanceError(f"clause {clause} must have 1 to 3 literals")
            while len(clause) < 3:
                clause.append(clause[-1])
            padded.append(tuple(clause))
        return cls(variable_count, tuple(padded))

    @property
    def clause_count(self) -> int:
        return len(self.clauses)

    def used_variables(self) -> set[int]:
        return {abs(lit) for clause in self.clauses for lit in clause}


def sat_bruteforce(f: Cnf3) -> bool:
    """Whether some assignment satisfies every clause, by scanning all 2^tau of them."""
    if f.variable_count > SAT_VARIABLE_GUARD:
        raise GuardError(
            f"sat_bruteforce is guarded at {SAT_VARIABLE_GUARD} variables, got {f.variable_count}"
        )
    for bits in range(1 << f.variable_count):
        if all(
            any((bits >> (abs(lit) - 1)) & 1 == (lit > 0) for lit in clause)
            for clause in f.clauses
        ):
            return True
    return False


def parse_dimacs_cnf(text: str) -> Cnf3:
    """Read a DIMACS CNF file; clauses shorter than 3 literals are padded."""
    header: tuple[int, int] | None = None
    literals: list[int] = []
    clauses: list[list[int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("c"):
            continue
        if line.startswith("p"):
            if header is not None:
                raise ParseError("duplicate problem line", lineno)
            parts = line.split()
            if len(parts) != 4 or parts[1] != "cnf":
                raise ParseError(f"malformed problem line {line!r}", lineno)
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise ParseError(f"malformed problem line {line!r}", lineno)
            continue
        if header is None:
            raise ParseError("clause data before the problem line", lineno)
        for token in line.split():
            try:
                lit = int(token)
            except ValueError:
                raise ParseError(f"bad literal {token!r}", lineno)
            if lit == 0:
                if not literals:
                    raise ParseError("empty clause", lineno)
                clauses.append(literals)
                literals = []
            else:
                literals.append(lit)
    if header is None:
        raise ParseError("missing problem line")
    if literals:
        clauses.append(literals)  # final clause without trailing 0
    tau, m = header
    if len(clauses) != m:
        raise ParseError(f"problem line promises {m} clauses, found {len(clauses)}")
    for clause in clauses:
        if len(clause) > 3:
            raise ParseError(f"clause {clause} has more than 3 literals")
    return Cnf3.from_clauses(tau, clauses)


@dataclass(frozen=True)
class GadgetInstance:
    instance: Instance
    labels: dict[int, str] = field(default_factory=dict)
    thresholds: dict[Measure, int] = field(default_factory=dict)


class _Builder:
    """Incremental vertex/edge collector with semantic labels."""

    def __init__(self):
        self.labels: dict[int, str] = {}
        self.edges: list[tuple[int, int]] = []

    def vertex(self, label: str) -> int:
        v = len(self.labels)
        self.labels[v] = label
        return v

    def edge(self, u: int, v: int) -> None:
        self.edges.append((u, v))

    def path(self, a: int, b: int, length: int, label: str) -> None:
        """Connect a and b by a fresh path with ``length`` edges."""
        prev = a
        for step in range(1, length):
            w = self.vertex(f"{label}.{step}")
            self.edge(prev, w)
            prev = w
        self.edge(prev, b)


def gen_ind_gadget(f: Cnf3) -> GadgetInstance:
    """Encode satisfiability as an independence movement question.

    Every variable and every clause contributes a pebbled star; a literal edge
    ties each clause leaf to the variable leaf of the opposite sign.  The
    formula is satisfiable exactly when maximum movement 1 (or total movement
    tau+m) suffices.
    """
    unused = set(range(1, f.variable_count + 1)) - f.used_variables()
    if unused:
        raise InstanceError(
            f"variables {sorted(unused)} appear in no clause; their stars would be disconnected"
        )
    b = _Builder()
    pos_leaf: dict[int, int] = {}
    neg_leaf: dict[int, int] = {}
    sigma: list[int] = []
    for i in range(1, f.variable_count + 1):
        hub = b.vertex(f"v{i}")
        anchor = b.vertex(f"u{i}")
        pos_leaf[i] = b.vertex(f"x{i}")
        neg_leaf[i] = b.vertex(f"~x{i}")
        b.edge(hub, anchor)
        b.edge(hub, pos_leaf[i])
        b.edge(hub, neg_leaf[i])
        sigma.append(anchor)
        sigma.append(hub)
    for j, clause in enumerate(f.clauses, start=1):
        hub = b.vertex(f"z{j}")
        leaves = [b.vertex(f"c{j}l{pos}") for pos in range(1, 4)]
        anchor = b.vertex(f"w{j}")
        for leaf in leaves:
            b.edge(hub, leaf)
        b.edge(hub, anchor)
        sigma.append(anchor)
        sigma.append(hub)
        for leaf, lit in zip(leaves, clause):
            target = neg_leaf[abs(lit)] if lit > 0 else pos_leaf[abs(lit)]
            b.edge(leaf, target)
    inst = Instance(Graph(len(b.labels), b.edges), tuple(sigma), Goal(GoalKind.IND))
    thresholds = {Measure.MAX: 1, Measure.SUM: f.variable_count + f.clause_count}
    return GadgetInstance(inst, b.labels, thresholds)


def gen_stcut_gadget(f: Cnf3, h: int | None = None) -> GadgetInstance:
    """Encode satisfiability as a separator movement question.

    Variable and clause paths carry the pebbles; every other connection is a
    fresh path of length ``h``, which must exceed the pebble count
    (default: exactly one more).  Satisfiable formulas admit a separating
    placement with maximum movement 1 (total movement at most k).
    """
    k = f.variable_count + 2 * f.clause_count
    if h is None:
        h = k + 1
    if h <= k:
        raise InstanceError(f"long-path length must exceed the pebble count {k}, got {h}")
    b = _Builder()
    s = b.vertex("s")
    t = b.vertex("t")
    sigma: list[int] = []
    pos_end: dict[int, int] = {}
    neg_end: dict[int, int] = {}
    for i in range(1, f.variable_count + 1):
        pos_end[i] = b.vertex(f"x{i}")
        mid = b.vertex(f"u{i}")
        neg_end[i] = b.vertex(f"~x{i}")
        b.edge(pos_end[i], mid)
        b.edge(mid, neg_end[i])
        sigma.append(mid)
    literal_vertices: list[tuple[int, int]] = []  # (vertex, literal)
    for j, clause in enumerate(f.clauses, start=1):
        l1 = b.vertex(f"c{j}l1")
        inner1 = b.vertex(f"v{j}")
        l2 = b.vertex(f"c{j}l2")
        inner2 = b.vertex(f"v{j}'")
        l3 = b.vertex(f"c{j}l3")
        b.edge(l1, inner1)
        b.edge(inner1, l2)
        b.edge(l2, inner2)
        b.edge(inner2, l3)
        sigma.append(inner1)
        sigma.append(inner2)
        for vertex, lit in zip((l1, l2, l3), clause):
            literal_vertices.append((vertex, lit))
    for idx, (vertex, lit) in enumerate(literal_vertices):
        target = pos_end[abs(lit)] if lit > 0 else neg_end[abs(lit)]
        b.path(vertex, target, h, f"lit{idx}")
    for i in range(1, f.variable_count + 1):
        b.path(s, pos_end[i], h, f"s-x{i}")
        b.path(s, neg_end[i], h, f"s-~x{i}")
    for idx, (vertex, _) in enumerate(literal_vertices):
        b.path(t, vertex, h, f"t-lit{idx}")
    inst = Instance(
        Graph(len(b.labels), b.edges), tuple(sigma), Goal(GoalKind.STCUT, s=s, t=t)
    )
    thresholds = {Measure.MAX: 1, Measure.SUM: k}
    return GadgetInstance(inst, b.labels, thresholds)


def _check_fragment(vertex_count: int, edges: Iterable[tuple[int, int]]) -> list[tuple[int, int]]:
    seen = set()
    for u, v in edges:
        if not (0 <= u < vertex_count and 0 <= v < vertex_count):
            raise InstanceError(f"fragment edge ({u},{v}) out of range")
        if u == v:
            raise InstanceError(f"fragment self-loop at {u}")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise InstanceError(f"duplicate fragment edge {key}")
        seen.add(key)
    return sorted(seen)


def gen_clique_num_from_vc(vertex_count: int, edges: Iterable[tuple[int, int]]) -> GadgetInstance:
    """Clique move-count instance whose optimum equals the fragment's minimum vertex cover.

    The instance graph is the complement of the fragment plus one extra
    unpebbled vertex that keeps everything connected.
    """
    if vertex_count < 1:
        raise InstanceError("fragment needs at least one vertex")
    fragment = set(_check_fragment(vertex_count, edges))
    extra = vertex_count
    new_edges = [
        (u, v)
        for u in range(vertex_count)
        for v in range(u + 1, vertex_count)
        if (u, v) not in fragment
    ]
    new_edges.extend((u, extra) for u in range(vertex_count))
    labels = {u: f"h{u}" for u in range(vertex_count)}
    labels[extra] = "extra"
    inst = Instance(
        Graph(vertex_count + 1, new_edges),
        tuple(range(vertex_count)),
        Goal(GoalKind.CLIQUE),
    )
    return GadgetInstance(inst, labels, {})


def gen_clique_sum_from_vc(vertex_count: int, edges: Iterable[tuple[int, int]]) -> GadgetInstance:
    """Clique total-movement instance whose optimum equals the fragment's minimum vertex cover.

    The instance graph is the complement of the fragment plus one universal
    unpebbled vertex.
    """
    if vertex_count < 1:
        raise InstanceError("fragment needs at least one vertex")
    fragment = set(_check_fragment(vertex_count, edges))
    hub = vertex_count
    new_edges = [
        (u, v)
        for u in range(vertex_count)
        for v in range(u + 1, vertex_count)
        if (u, v) not in fragment
    ]
    new_edges.extend((u, hub) for u in range(vertex_count))
    labels = {u: f"h{u}" for u in range(vertex_count)}
    labels[hub] = "v0"
    inst = Instance(
        Graph(vertex_count + 1, new_edges),
        tuple(range(vertex_count)),
        Goal(GoalKind.CLIQUE),
    )
    return GadgetInstance(inst, labels, {})


def gen_clique_max_from_domclique(g: Graph) -> GadgetInstance:
    """Clique max-movement instance: movement 1 suffices iff g has a dominating clique."""
    inst = Instance(g, tuple(range(g.n)), Goal(GoalKind.CLIQUE))
    labels = {u: f"h{u}" for u in range(g.n)}
    return GadgetInstance(inst, labels, {Measure.MAX: 1})
