import json

import pytest

from pebblemotion.cli import main
from pebblemotion.instance_io import (
    parse_fragment,
    parse_instance,
    parse_solution,
    write_instance,
    write_solution,
)
from pebblemotion import ParseError, Solution
from pebblemotion.model import Goal, GoalKind, Instance, Measure
from helpers import path_graph

STAR = """pebblemotion v1
graph 4
e 0 1
e 0 2
e 0 3
p 1
p 2
goal con
"""

TRIANGLE = """pebblemotion v1
graph 3
e 0 1
e 1 2
e 0 2
p 0
goal con
"""


def _write(tmp_path, name, text):
    path = tmp_path / name
    path.write_text(text)
    return str(path)


def test_parse_roundtrip_canonical():
    inst = parse_instance(STAR)
    assert write_instance(inst) == STAR
    assert write_instance(parse_instance(write_instance(inst))) == STAR


def test_parse_tolerates_comments_and_order():
    text = "pebblemotion v1\ngraph 3\np 0  # start\ne 0 1\ne 1 2\ngoal stcut 0 2\n"
    inst = parse_instance(text)
    assert inst.goal.kind is GoalKind.STCUT and inst.goal.s == 0 and inst.goal.t == 2


def test_parse_errors_carry_line_numbers():
    bad = "pebblemotion v1\ngraph 3\ne 0 5\np 0\ngoal con\n"
    with pytest.raises(ParseError):
        parse_instance(bad)
    with pytest.raises(ParseError) as err:
        parse_instance("pebblemotion v1\ngraph 3\ne zero 1\np 0\ngoal con\n")
    assert "line 3" in str(err.value)
    for bad in (
        "graph 3\np 0\ngoal con\n",  # missing header
        "pebblemotion v1\ngraph 3\ne 0 1\ne 1 2\ngoal con\n",  # no pebbles
        "pebblemotion v1\ngraph 3\ne 0 1\ne 1 2\np 0\n",  # no goal
        "pebblemotion v1\ngraph 2\ne 0 1\np 0\ngoal stcut 0 0\n",
        "pebblemotion v1\ngraph 4\ne 0 1\ne 2 3\np 0\ngoal con\n",  # disconnected
    ):
        with pytest.raises(ParseError):
            parse_instance(bad)


def test_solution_roundtrip():
    inst = parse_instance(STAR)
    sol = Solution((0, 2))
    text = write_solution(sol)
    assert parse_solution(text, inst) == sol
    with pytest.raises(ParseError):
        parse_solution("mu 0 0\n", inst)  # pebble 1 missing
    with pytest.raises(ParseError):
        parse_solution("mu 0 0\nmu 0 1\nmu 1 2\n", inst)


def test_parse_fragment():
    n, edges = parse_fragment("graph 3\ne 0 1\n")
    assert n == 3 and edges == [(0, 1)]
    with pytest.raises(ParseError):
        parse_fragment("e 0 1\n")


def test_solve_exact_star(tmp_path, capsys):
    path = _write(tmp_path, "star.pm", STAR)
    code = main(["solve", "--in", path, "--measure", "sum", "--method", "exact"])
    out = capsys.readouterr().out
    assert code == 0
    assert "cost 1" in out
    assert "guarantee exact" in out


def test_solve_json_output(tmp_path, capsys):
    path = _write(tmp_path, "star.pm", STAR)
    code = main(["solve", "--in", path, "--measure", "sum", "--json"])
    payload = json.loads(capsys.readouterr().out)
    assert code == 0
    assert payload["cost"] == 1
    assert payload["measure"] == "sum"
    assert payload["guarantee"] == "exact"
    assert len(payload["mu"]) == 2


def test_solve_exact_requires_tree(tmp_path, capsys):
    path = _write(tmp_path, "tri.pm", TRIANGLE)
    code = main(["solve", "--in", path, "--measure", "sum", "--method", "exact"])
    err = capsys.readouterr().err
    assert code == 1
    assert "exact solver requires a tree" in err


def test_solve_auto_falls_back_to_oracle(tmp_path, capsys):
    path = _write(tmp_path, "tri.pm", TRIANGLE)
    code = main(["solve", "--in", path, "--measure", "sum", "--json"])
    payload = json.loads(capsys.readouterr().out)
    assert code == 0
    assert payload["method"].startswith("oracle")
    assert payload["cost"] == 0


def test_solve_infeasible_exit_code(tmp_path, capsys):
    text = "pebblemotion v1\ngraph 3\ne 0 1\ne 1 2\np 0\np 1\np 2\ngoal ind\n"
    path = _write(tmp_path, "full.pm", text)
    code = main(["solve", "--in", path, "--measure", "sum"])
    out = capsys.readouterr().out
    assert code == 2
    assert out.startswith("infeasible")


def test_verify_accepts_and_rejects(tmp_path, capsys):
    inst_path = _write(tmp_path, "star.pm", STAR)
    good = _write(tmp_path, "good.sol", "mu 0 0\nmu 1 2\n")
    code = main(["verify", "--in", inst_path, "--solution", good])
    out = capsys.readouterr().out
    assert code == 0
    assert "valid" in out and "sum 1" in out
    bad = _write(tmp_path, "bad.sol", "mu 0 1\nmu 1 3\n")
    code = main(["verify", "--in", inst_path, "--solution", bad])
    assert code == 2
    assert "invalid" in capsys.readouterr().out


def test_verify_matches_solver_costs(tmp_path, capsys):
    inst = parse_instance(STAR)
    from pebblemotion.tree_dp import solve_con_sum_tree

    report = solve_con_sum_tree(inst)
    inst_path = _write(tmp_path, "star.pm", STAR)
    sol_path = _write(tmp_path, "dp.sol", write_solution(report.solution))
    code = main(["verify", "--in", inst_path, "--solution", sol_path, "--json"])
    payload = json.loads(capsys.readouterr().out)
    assert code == 0
    assert payload["valid"] is True
    assert payload["costs"]["sum"] == report.cost


def test_gen_ind_gadget_roundtrip(tmp_path, capsys):
    cnf = _write(tmp_path, "f.cnf", "p cnf 1 1\n1 1 1 0\n")
    out_file = str(tmp_path / "gadget.pm")
    labels_file = str(tmp_path / "labels.json")
    code = main([
        "gen", "ind-gadget", "--cnf", cnf, "--out", out_file, "--labels-out", labels_file,
    ])
    assert code == 0
    inst = parse_instance(open(out_file).read())
    assert inst.graph.n == 9 and inst.k == 4
    labels = json.loads(open(labels_file).read())
    assert labels["thresholds"] == {"max": 1, "sum": 2}
    assert len(labels["labels"]) == 9


def test_gen_stcut_gadget_stdout(tmp_path, capsys):
    cnf = _write(tmp_path, "f.cnf", "p cnf 1 1\n1 1 1 0\n")
    code = main(["gen", "stcut-gadget", "--cnf", cnf, "--path-length", "4"])
    out = capsys.readouterr().out
    assert code == 0
    inst = parse_instance(out)
    assert inst.goal.kind is GoalKind.STCUT


def test_gen_requires_matching_input(tmp_path, capsys):
    with pytest.raises(SystemExit):
        main(["gen", "ind-gadget"])


def test_gen_clique_gadgets(tmp_path, capsys):
    frag = _write(tmp_path, "h.frag", "graph 2\ne 0 1\n")
    code = main(["gen", "clique-num-vc", "--graph", frag])
    inst = parse_instance(capsys.readouterr().out)
    assert code == 0 and inst.graph.n == 3 and inst.k == 2
    code = main(["gen", "clique-max-dc", "--graph", frag])
    assert code == 0
    assert parse_instance(capsys.readouterr().out).k == 2


def test_bench_deterministic(tmp_path, capsys):
    code = main(["bench", "--suite", "trees", "--seed", "7"])
    first = capsys.readouterr().out
    assert code == 0
    code = main(["bench", "--suite", "trees", "--seed", "7"])
    second = capsys.readouterr().out
    assert first == second
    assert first.splitlines()[0].startswith("suite,")


def test_bench_small_suite_runs(capsys):
    assert main(["bench", "--suite", "small", "--seed", "1"]) == 0
    out = capsys.readouterr().out
    assert len(out.splitlines()) > 10


def test_missing_file_is_an_error(capsys):
    assert main(["solve", "--in", "/nonexistent.pm", "--measure", "sum"]) == 1
    assert "error" in capsys.readouterr().err
