"""Command-line front end: solve, verify, gen, and bench subcommands.

Exit codes: 0 when solved or verified, 2 when the instance is infeasible or
the supplied solution invalid, 1 on any error (parse failure, guard hit,
unsupported solver combination).
"""

from __future__ import annotations

import argparse
import bisect
import csv
import json
import random
import sys
import time

from .approx import (
    approx_clique_max,
    approx_clique_num,
    approx_clique_sum,
    approx_ind_max,
    approx_stcut_max,
    approx_stcut_sum,
    exact_clique_num_mwc,
    maximum_independent_set,
)
from .errors import GuardError, ParseError, PebbleMotionError, SolverError
from .gadgets import (
    Cnf3,
    gen_clique_max_from_domclique,
    gen_clique_num_from_vc,
    gen_clique_sum_from_vc,
    gen_ind_gadget,
    gen_stcut_gadget,
    parse_dimacs_cnf,
    sat_bruteforce,
)
from .graphs import Graph
from .instance_io import (
    parse_fragment,
    parse_instance,
    parse_solution,
    write_instance,
)
from .model import (
    Goal,
    GoalKind,
    Infeasible,
    Instance,
    Measure,
    Solution,
    SolveReport,
    solution_cost,
    validate,
)
from .oracle import oracle_bounded, oracle_ind, oracle_solve
from .paths import solve_ind_max_on_path_instance
from .tree_dp import (
    solve_con_num_tree,
    solve_con_sum_tree,
    solve_ind_num_tree,
    solve_ind_sum_tree,
)


class _Parser(argparse.ArgumentParser):
    # argparse exits with 2 on bad usage; 2 is reserved for infeasible here.
    def error(self, message):
        self.print_usage(sys.stderr)
        raise SystemExit(f"error: {message}")


def _solve_exact(inst: Instance, measure: Measure, force: bool) -> SolveReport | Infeasible:
    goal = inst.goal.kind
    if goal is GoalKind.CON:
        if not inst.graph.is_tree():
            raise SolverError("exact solver requires a tree for con goals")
        if measure is Measure.SUM:
            return solve_con_sum_tree(inst)
        if measure is Measure.NUM:
            return solve_con_num_tree(inst)
        raise SolverError("no exact con/max solver here; use --method oracle")
    if goal is GoalKind.IND:
        if measure is Measure.MAX:
            if not inst.graph.is_path():
                raise SolverError("exact solver requires a path for ind/max")
            return solve_ind_max_on_path_instance(inst)
        if not inst.graph.is_tree():
            raise SolverError("exact solver requires a tree for ind goals")
        if measure is Measure.SUM:
            return solve_ind_sum_tree(inst)
        return solve_ind_num_tree(inst)
    if goal is GoalKind.CLIQUE:
        if measure is Measure.NUM:
            return exact_clique_num_mwc(inst, force=force)
        raise SolverError(f"no exact clique/{measure.value} solver here; use --method oracle")
    raise SolverError("no exact stcut solver here; use --method oracle")


def _solve_approx(inst: Instance, measure: Measure) -> SolveReport | Infeasible:
    goal = inst.goal.kind
    if goal is GoalKind.IND:
        if measure is Measure.MAX:
            return approx_ind_max(inst, maximum_independent_set(inst.graph))
        raise SolverError(f"no approximation algorithm for ind/{measure.value}")
    if goal is GoalKind.CLIQUE:
        if measure is Measure.MAX:
            return approx_clique_max(inst)
        if measure is Measure.NUM:
            return approx_clique_num(inst)
        return approx_clique_sum(inst)
    if goal is GoalKind.STCUT:
        if measure is Measure.MAX:
            return approx_stcut_max(inst)
        if measure is Measure.SUM:
            return approx_stcut_sum(inst)
        raise SolverError("no approximation algorithm for stcut/num (open problem)")
    raise SolverError("no approximation algorithm for con goals")


def _solve_oracle(inst: Instance, measure: Measure) -> SolveReport | Infeasible:
    if inst.goal.kind is GoalKind.IND:
        return oracle_ind(inst, measure)
    return oracle_solve(inst, measure)


def _solve_auto(inst: Instance, measure: Measure) -> SolveReport | Infeasible:
    goal = inst.goal.kind
    tree = inst.graph.is_tree()
    if goal is GoalKind.CON and tree and measure in (Measure.SUM, Measure.NUM):
        return _solve_exact(inst, measure, force=False)
    if goal is GoalKind.IND:
        if measure is Measure.MAX and inst.graph.is_path():
            return _solve_exact(inst, measure, force=False)
        if measure in (Measure.SUM, Measure.NUM) and tree:
            return _solve_exact(inst, measure, force=False)
        if measure is Measure.MAX:
            try:
                return _solve_approx(inst, measure)
            except GuardError:
                return _solve_oracle(inst, measure)
    if goal is GoalKind.CLIQUE:
        return _solve_approx(inst, measure)
    if goal is GoalKind.STCUT and measure in (Measure.MAX, Measure.SUM):
        return _solve_approx(inst, measure)
    return _solve_oracle(inst, measure)


def dispatch_solve(
    inst: Instance, measure: Measure, method: str, force: bool = False
) -> SolveReport | Infeasible:
    if method == "exact":
        return _solve_exact(inst, measure, force)
    if method == "approx":
        return _solve_approx(inst, measure)
    if method == "oracle":
        return _solve_oracle(inst, measure)
    return _solve_auto(inst, measure)


def _print_report(report: SolveReport, as_json: bool) -> None:
    if as_json:
        print(
            json.dumps(
                {
                    "cost": report.cost,
                    "measure": report.measure.value,
                    "method": report.method,
                    "guarantee": report.guarantee.label(),
                    "mu": list(report.solution.mu),
                }
            )
        )
    else:
        print(f"cost {report.cost}")
        print(f"measure {report.measure.value}")
        print(f"method {report.method}")
        print(f"guarantee {report.guarantee.label()}")
        print("mu " + " ".join(str(v) for v in report.solution.mu))


def _cmd_solve(args) -> int:
    with open(args.infile) as fh:
        inst = parse_instance(fh.read())
    outcome = dispatch_solve(inst, Measure(args.measure), args.method, args.force)
    if isinstance(outcome, Infeasible):
        if args.json:
            print(json.dumps({"infeasible": True, "reason": outcome.reason}))
        else:
            print(f"infeasible: {outcome.reason}")
        return 2
    _print_report(outcome, args.json)
    return 0


def _cmd_verify(args) -> int:
    with open(args.infile) as fh:
        inst = parse_instance(fh.read())
    with open(args.solution) as fh:
        sol = parse_solution(fh.read(), inst)
    ok = validate(inst, sol)
    costs = {m.value: solution_cost(inst, sol, m) for m in Measure}
    if args.json:
        print(json.dumps({"valid": ok, "costs": costs}))
    else:
        print("valid" if ok else "invalid")
        for name, value in costs.items():
            print(f"{name} {value}")
    return 0 if ok else 2


def _cmd_gen(args) -> int:
    if args.kind in ("ind-gadget", "stcut-gadget"):
        with open(args.cnf) as fh:
            formula = parse_dimacs_cnf(fh.read())
        if args.kind == "ind-gadget":
            gadget = gen_ind_gadget(formula)
        else:
            gadget = gen_stcut_gadget(formula, args.path_length)
    else:
        with open(args.graph) as fh:
            n, edges = parse_fragment(fh.read())
        if args.kind == "clique-num-vc":
            gadget = gen_clique_num_from_vc(n, edges)
        elif args.kind == "clique-sum-vc":
            gadget = gen_clique_sum_from_vc(n, edges)
        else:
            gadget = gen_clique_max_from_domclique(Graph(n, edges))
    text = write_instance(gadget.instance)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    if args.labels_out:
        payload = {
            "labels": {str(v): label for v, label in sorted(gadget.labels.items())},
            "thresholds": {m.value: c for m, c in gadget.thresholds.items()},
        }
        with open(args.labels_out, "w") as fh:
            json.dump(payload, fh, indent=2)
            fh.write("\n")
    return 0


def _random_tree(rng: random.Random, n: int) -> Graph:
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


def _random_connected(rng: random.Random, n: int, extra_edges: int) -> Graph:
    tree = _random_tree(rng, n)
    edges = set(tree.edges)
    candidates = [
        (u, v) for u in range(n) for v in range(u + 1, n) if (u, v) not in edges
    ]
    rng.shuffle(candidates)
    edges.update(candidates[:extra_edges])
    return Graph(n, sorted(edges))


def _cmd_bench(args) -> int:
    rng = random.Random(args.seed)
    writer = csv.writer(sys.stdout)
    writer.writerow(
        ["suite", "index", "goal", "measure", "n", "k", "method", "status", "cost", "guarantee"]
    )
    started = time.perf_counter()
    rows = 0

    def emit(index, inst, measure, outcome):
        nonlocal rows
        if isinstance(outcome, Infeasible):
            writer.writerow(
                [args.suite, index, inst.goal.kind.value, measure.value, inst.graph.n,
                 inst.k, "-", "infeasible", "-", "-"]
            )
        else:
            writer.writerow(
                [args.suite, index, inst.goal.kind.value, measure.value, inst.graph.n,
                 inst.k, outcome.method, "solved", outcome.cost, outcome.guarantee.label()]
            )
        rows += 1

    if args.suite == "small":
        goals = [GoalKind.CON, GoalKind.CLIQUE, GoalKind.STCUT, GoalKind.IND]
        for index in range(12):
            n = rng.randint(4, 7)
            g = _random_connected(rng, n, rng.randint(0, n))
            k = rng.randint(1, 3)
            sigma = tuple(rng.randrange(n) for _ in range(k))
            kind = goals[index % len(goals)]
            if kind is GoalKind.STCUT:
                s, t = rng.sample(range(n), 2)
                goal = Goal(kind, s=s, t=t)
            else:
                goal = Goal(kind)
            if kind is GoalKind.IND:
                sigma = tuple(sorted(set(sigma)))  # distinct starts keep it plausible
            inst = Instance(g, sigma, goal)
            for measure in Measure:
                try:
                    emit(index, inst, measure, dispatch_solve(inst, measure, "auto"))
                except SolverError:
                    writer.writerow(
                        [args.suite, index, kind.value, measure.value, n, inst.k,
                         "-", "unsupported", "-", "-"]
                    )
                    rows += 1
    elif args.suite == "trees":
        for index in range(12):
            n = rng.randint(5, 8)
            g = _random_tree(rng, n)
            k = rng.randint(2, 4)
            sigma = tuple(rng.randrange(n) for _ in range(k))
            con = Instance(g, sigma, Goal(GoalKind.CON))
            ind = Instance(g, sigma, Goal(GoalKind.IND))
            emit(index, con, Measure.SUM, solve_con_sum_tree(con))
            emit(index, con, Measure.NUM, solve_con_num_tree(con))
            emit(index, ind, Measure.SUM, solve_ind_sum_tree(ind))
            emit(index, ind, Measure.NUM, solve_ind_num_tree(ind))
    else:  # gadgets
        formulas = [
            Cnf3.from_clauses(1, [[1, 1, 1]]),
            Cnf3.from_clauses(1, [[1, 1, 1], [-1, -1, -1]]),
            Cnf3.from_clauses(2, [[1, 2, 2], [-1, -2, -2]]),
        ]
        for index, formula in enumerate(formulas):
            sat = sat_bruteforce(formula)
            ind = gen_ind_gadget(formula)
            outcome = oracle_ind(ind.instance, Measure.MAX)
            emit(index, ind.instance, Measure.MAX, outcome)
            cut = gen_stcut_gadget(formula)
            bounded = oracle_bounded(cut.instance, 1)
            status = "radius-1-feasible" if not isinstance(bounded, Infeasible) else "radius-1-infeasible"
            writer.writerow(
                [args.suite, index, "stcut", "max", cut.instance.graph.n,
                 cut.instance.k, "oracle-bounded", status, "-", "sat" if sat else "unsat"]
            )
            rows += 1
    print(f"bench: {rows} rows in {time.perf_counter() - started:.2f}s", file=sys.stderr)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="pebblemotion", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="solve an instance file")
    solve.add_argument("--in", dest="infile", required=True, help="instance file")
    solve.add_argument("--measure", choices=[m.value for m in Measure], required=True)
    solve.add_argument(
        "--method", choices=["auto", "exact", "approx", "oracle"], default="auto"
    )
    solve.add_argument("--json", action="store_true", help="machine-readable output")
    solve.add_argument(
        "--force", action="store_true", help="override the exact clique solver size guard"
    )

    verify = sub.add_parser("verify", help="check a solution file against an instance")
    verify.add_argument("--in", dest="infile", required=True)
    verify.add_argument("--solution", required=True)
    verify.add_argument("--json", action="store_true")

    gen = sub.add_parser("gen", help="generate embedded-problem instances")
    gen.add_argument(
        "kind",
        choices=["ind-gadget", "stcut-gadget", "clique-num-vc", "clique-sum-vc", "clique-max-dc"],
    )
    gen.add_argument("--cnf", help="DIMACS CNF input (SAT gadgets)")
    gen.add_argument("--graph", help="graph fragment input (cover/clique gadgets)")
    gen.add_argument(
        "--path-length", type=int, default=None, help="long-path length for stcut-gadget"
    )
    gen.add_argument("--out", help="write the instance here instead of stdout")
    gen.add_argument("--labels-out", help="write vertex labels and thresholds as JSON")

    bench = sub.add_parser("bench", help="run a deterministic benchmark suite")
    bench.add_argument("--suite", choices=["small", "trees", "gadgets"], required=True)
    bench.add_argument("--seed", type=int, default=0)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "solve":
            return _cmd_solve(args)
        if args.command == "verify":
            return _cmd_verify(args)
        if args.command == "gen":
            if args.kind in ("ind-gadget", "stcut-gadget") and not args.cnf:
                parser.error(f"gen {args.kind} requires --cnf")
            if args.kind.startswith("clique") and not args.graph:
                parser.error(f"gen {args.kind} requires --graph")
            return _cmd_gen(args)
        return _cmd_bench(args)
    except (PebbleMotionError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
