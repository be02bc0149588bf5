"""Text formats: instance files, solution files, and bare graph fragments.

Instance format (one directive per line, ``#`` starts a comment)::

    pebblemotion v1
    graph <n>
    e <u> <v>          one line per edge
    p <vertex>         one line per pebble
    goal con|ind|clique|stcut [s t]

Vertex ids are 0-based.  Parsing rejects self-loops, duplicate edges,
disconnected graphs, out-of-range ids, pebble-free instances, and missing or
repeated sections.  The writer emits a canonical form (sorted edges, pebbles
in index order, goal last) that re-parses to the identical byte string.
"""

from __future__ import annotations

from .errors import InstanceError, ParseError
from .graphs import Graph
from .model import Goal, GoalKind, Instance, Solution

HEADER = "pebblemotion v1"


def parse_instance(text: str) -> Instance:
    n: int | None = None
    edges: list[tuple[int, int]] = []
    pebbles: list[int] = []
    goal: Goal | None = None
    saw_header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not saw_header:
            if line != HEADER:
                raise ParseError(f"expected header {HEADER!r}, got {line!r}", lineno)
            saw_header = True
            continue
        fields = line.split()
        kind = fields[0]
        if kind == "graph":
            if n is not None:
                raise ParseError("duplicate graph line", lineno)
            if len(fields) != 2:
                raise ParseError("graph line needs exactly one vertex count", lineno)
            n = _int_field(fields[1], lineno)
            if n < 1:
                raise ParseError("vertex count must be positive", lineno)
        elif kind == "e":
            if n is None:
                raise ParseError("edge before graph line", lineno)
            if len(fields) != 3:
                raise ParseError("edge line needs two endpoints", lineno)
            edges.append((_int_field(fields[1], lineno), _int_field(fields[2], lineno)))
        elif kind == "p":
            if n is None:
                raise ParseError("pebble before graph line", lineno)
            if len(fields) != 2:
                raise ParseError("pebble line needs one vertex", lineno)
            pebbles.append(_int_field(fields[1], lineno))
        elif kind == "goal":
            if n is None:
                raise ParseError("goal before graph line", lineno)
            if goal is not None:
                raise ParseError("duplicate goal line", lineno)
            goal = _parse_goal(fields[1:], lineno)
        else:
            raise ParseError(f"unknown directive {kind!r}", lineno)
    if not saw_header:
        raise ParseError("empty instance file")
    if n is None:
        raise ParseError("missing graph line")
    if goal is None:
        raise ParseError("missing goal line")
    if not pebbles:
        raise ParseError("instance needs at least one pebble")
    try:
        graph = Graph(n, edges)
        return Instance(graph, tuple(pebbles), goal)
    except InstanceError as exc:
        raise ParseError(str(exc)) from exc


def _int_field(token: str, lineno: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError(f"expected an integer, got {token!r}", lineno)


def _parse_goal(fields: list[str], lineno: int) -> Goal:
    if not fields:
        raise ParseError("goal line needs a goal kind", lineno)
    name = fields[0]
    try:
        kind = GoalKind(name)
    except ValueError:
        raise ParseError(f"unknown goal {name!r}", lineno)
    if kind is GoalKind.STCUT:
        if len(fields) != 3:
            raise ParseError("stcut goal needs s and t", lineno)
        try:
            return Goal(kind, s=_int_field(fields[1], lineno), t=_int_field(fields[2], lineno))
        except InstanceError as exc:
            raise ParseError(str(exc), lineno) from exc
    if len(fields) != 1:
        raise ParseError(f"goal {name} takes no parameters", lineno)
    return Goal(kind)


def write_instance(inst: Instance) -> str:
    lines = [HEADER, f"graph {inst.graph.n}"]
    lines.extend(f"e {u} {v}" for u, v in sorted(inst.graph.edges))
    lines.extend(f"p {v}" for v in inst.sigma)
    goal = inst.goal
    if goal.kind is GoalKind.STCUT:
        lines.append(f"goal stcut {goal.s} {goal.t}")
    else:
        lines.append(f"goal {goal.kind.value}")
    return "\n".join(lines) + "\n"


def parse_solution(text: str, inst: Instance) -> Solution:
    """Solution file: one ``mu <pebble> <vertex>`` line per pebble."""
    mu: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if fields[0] != "mu" or len(fields) != 3:
            raise ParseError(f"expected 'mu <pebble> <vertex>', got {line!r}", lineno)
        p = _int_field(fields[1], lineno)
        v = _int_field(fields[2], lineno)
        if not 0 <= p < inst.k:
            raise ParseError(f"pebble {p} out of range (k={inst.k})", lineno)
        if p in mu:
            raise ParseError(f"duplicate assignment for pebble {p}", lineno)
        if not 0 <= v < inst.graph.n:
            raise ParseError(f"vertex {v} out of range (n={inst.graph.n})", lineno)
        mu[p] = v
    missing = [p for p in range(inst.k) if p not in mu]
    if missing:
        raise ParseError(f"missing assignments for pebbles {missing}")
    return Solution(tuple(mu[p] for p in range(inst.k)))


def write_solution(sol: Solution) -> str:
    return "".join(f"mu {p} {v}\n" for p, v in enumerate(sol.mu))


def parse_fragment(text: str) -> tuple[int, list[tuple[int, int]]]:
    """Bare graph fragment: a ``graph <n>`` line plus ``e u v`` lines (may be disconnected)."""
    n: int | None = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = line.split()
        if fields[0] == "graph":
            if n is not None:
                raise ParseError("duplicate graph line", lineno)
            if len(fields) != 2:
                raise ParseError("graph line needs exactly one vertex count", lineno)
            n = _int_field(fields[1], lineno)
        elif fields[0] == "e":
            if n is None:
                raise ParseError("edge before graph line", lineno)
            if len(fields) != 3:
                raise ParseError("edge line needs two endpoints", lineno)
            u, v = _int_field(fields[1], lineno), _int_field(fields[2], lineno)
            if not (0 <= u < n and 0 <= v < n) or u == v or (min(u, v), max(u, v)) in set(
                (min(a, b), max(a, b)) for a, b in edges
            ):
                raise ParseError(f"bad or duplicate edge ({u},{v})", lineno)
            edges.append((u, v))
        else:
            raise ParseError(f"unknown directive {fields[0]!r}", lineno)
    if n is None:
        raise ParseError("missing graph line")
    return n, edges
