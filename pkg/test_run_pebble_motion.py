#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""End-to-end tests for the run_pebble_motion command line."""

import io
import json

import pytest

from errors import InstanceError
from graph_core import Graph
from instance_io import parse_instance
from instance_model import Goal, Instance, Measure
from run_pebble_motion import EXIT_ERROR, EXIT_INFEASIBLE, EXIT_OK, main, select_solver

STAR_CON = "pebblemotion v1\ngraph 4\ne 0 1\ne 0 2\ne 0 3\np 1\np 2\ngoal con\n"
CYCLE_CON = "pebblemotion v1\ngraph 4\ne 0 1\ne 1 2\ne 2 3\ne 0 3\np 0\np 2\ngoal con\n"
PATH_IND3 = "pebblemotion v1\ngraph 3\ne 0 1\ne 1 2\np 0\np 1\np 2\ngoal ind\n"

PATH5 = Graph(5, [(i, i + 1) for i in range(4)])
CYCLE5 = Graph(5, [(i, (i + 1) % 5) for i in range(5)])


@pytest.fixture
def write(tmp_path):
    def _write(name, text):
        path = tmp_path / name
        path.write_text(text, encoding="utf-8")
        return str(path)
    return _write


def run_json(capsys, argv):
    code = main(argv)
    return code, json.loads(capsys.readouterr().out)


class TestSolve:
    def test_exact_sum_on_star(self, write, capsys):
        path = write("star.txt", STAR_CON)
        code, out = run_json(capsys, ["solve", "--measure", "sum", "--method", "exact", "--in", path, "--json"])
        assert code == EXIT_OK
        assert out["cost"] == 1
        assert out["guarantee"] == "exact"
        assert out["method"] == "con-sum-tree-dp"
        assert len(out["mu"]) == 2

    def test_human_output(self, write, capsys):
        assert main(["solve", "--measure", "num", "--in", write("star.txt", STAR_CON)]) == EXIT_OK
        out = capsys.readouterr().out
        assert "✅ cost 1 (num) via con-num-tree-dp [exact]" in out
        assert "pebble 0: 1 ->" in out

    def test_exact_on_cycle_is_an_error(self, write, capsys):
        code = main(["solve", "--measure", "sum", "--method", "exact", "--in", write("c.txt", CYCLE_CON)])
        assert code == EXIT_ERROR
        assert "exact solver requires a tree" in capsys.readouterr().err

    def test_infeasible_exit_code(self, write, capsys):
        code, out = run_json(capsys, ["solve", "--measure", "sum", "--in", write("p.txt", PATH_IND3), "--json"])
        assert code == EXIT_INFEASIBLE
        assert out["infeasible"] is True
        assert out["method"] == "ind-sum-tree-dp"

    def test_infeasible_human_output(self, write, capsys):
        assert main(["solve", "--measure", "max", "--in", write("p.txt", PATH_IND3)]) == EXIT_INFEASIBLE
        assert "❌ infeasible under max" in capsys.readouterr().out

    def test_oracle_method(self, write, capsys):
        code, out = run_json(capsys, ["solve", "--measure", "max", "--method", "oracle",
                                      "--in", write("c.txt", CYCLE_CON), "--json"])
        assert code == EXIT_OK
        assert out["cost"] == 1
        assert out["method"] == "oracle"

    def test_missing_approximation(self, write, capsys):
        code = main(["solve", "--measure", "sum", "--method", "approx", "--in", write("s.txt", STAR_CON)])
        assert code == EXIT_ERROR
        assert "no approximation for con-sum" in capsys.readouterr().err

    def test_parse_error_names_line(self, write, capsys):
        code = main(["solve", "--measure", "sum", "--in", write("bad.txt", "graph 2\n")])
        assert code == EXIT_ERROR
        assert "line 1:" in capsys.readouterr().err

    def test_missing_file(self, tmp_path, capsys):
        code = main(["solve", "--measure", "sum", "--in", str(tmp_path / "nope.txt")])
        assert code == EXIT_ERROR
        assert capsys.readouterr().err.startswith("❌")

    def test_reads_stdin(self, monkeypatch, capsys):
        monkeypatch.setattr("sys.stdin", io.StringIO(STAR_CON))
        code, out = run_json(capsys, ["solve", "--measure", "sum", "--in", "-", "--json"])
        assert code == EXIT_OK
        assert out["cost"] == 1

    def test_measure_is_required(self, write):
        with pytest.raises(SystemExit):
            main(["solve", "--in", write("s.txt", STAR_CON)])


class TestVerify:
    def test_valid_solution(self, write, capsys):
        inst = write("i.txt", STAR_CON)
        sol = write("s.txt", "mu 0 0\nmu 1 2\n")
        code, out = run_json(capsys, ["verify", "--in", inst, "--solution", sol, "--json"])
        assert code == EXIT_OK
        assert out == {"valid": True, "costs": {"sum": 1, "max": 1, "num": 1}, "mu": [0, 2]}

    def test_invalid_solution(self, write, capsys):
        inst = write("i.txt", STAR_CON)
        sol = write("s.txt", "mu 0 1\nmu 1 2\n")
        assert main(["verify", "--in", inst, "--solution", sol]) == EXIT_ERROR
        assert "does not satisfy goal con" in capsys.readouterr().out

    def test_start_configuration_when_already_satisfied(self, write, capsys):
        inst = write("i.txt", STAR_CON.replace("p 2\n", "p 0\n"))
        sol = write("s.txt", "mu 0 1\nmu 1 0\n")
        code, out = run_json(capsys, ["verify", "--in", inst, "--solution", sol, "--json"])
        assert code == EXIT_OK
        assert out["costs"] == {"sum": 0, "max": 0, "num": 0}


class TestGen:
    def test_ind_gadget_to_file(self, write, tmp_path, capsys):
        cnf = write("f.cnf", "p cnf 3 2\n-1 -2 3 0\n1 2 -3 0\n")
        out_path = tmp_path / "gadget.txt"
        assert main(["gen", "ind-gadget", "--cnf", cnf, "--out", str(out_path)]) == EXIT_OK
        inst = parse_instance(out_path.read_text(encoding="utf-8"))
        assert (inst.n, inst.k) == (22, 10)
        out = capsys.readouterr().out
        assert "satisfiable iff optimum max <= 1" in out
        assert "satisfiable iff optimum sum <= 5" in out
        assert "formula (3 variables) is satisfiable" in out

    def test_unsatisfiable_formula_is_reported(self, write, tmp_path, capsys):
        cnf = write("u.cnf", "p cnf 1 2\n1 1 1 0\n-1 -1 -1 0\n")
        out_path = tmp_path / "gadget.txt"
        assert main(["gen", "stcut-gadget", "--cnf", cnf, "--out", str(out_path)]) == EXIT_OK
        assert "formula (1 variables) is unsatisfiable" in capsys.readouterr().out

    def test_stcut_gadget_rejects_short_paths(self, write, capsys):
        cnf = write("f.cnf", "p cnf 1 1\n1 1 1 0\n")
        assert main(["gen", "stcut-gadget", "--cnf", cnf, "--h", "2"]) == EXIT_ERROR
        assert "h > k" in capsys.readouterr().err

    def test_needs_input(self, capsys):
        assert main(["gen", "ind-gadget"]) == EXIT_ERROR
        assert "needs --cnf" in capsys.readouterr().err

    def test_clique_gadget_to_stdout(self, write, capsys):
        graph = write("h.txt", "pebblemotion v1\ngraph 2\ne 0 1\n")
        assert main(["gen", "clique-num-vc", "--graph", graph]) == EXIT_OK
        inst = parse_instance(capsys.readouterr().out)
        assert inst.n == 3
        assert inst.sigma == (0, 1)


class TestBench:
    def test_trees_suite(self, tmp_path, capsys):
        code = main(["bench", "--suite", "trees", "--count", "2", "--seed", "3", "--out-dir", str(tmp_path)])
        assert code == EXIT_OK
        records = json.loads((tmp_path / "suite_trees_seed3.json").read_text(encoding="utf-8"))
        assert len(records) == 10
        assert all(r["within_guarantee"] for r in records)
        assert "results saved" in capsys.readouterr().out

    def test_same_seed_writes_identical_files(self, tmp_path):
        argv = ["bench", "--suite", "trees", "--count", "2", "--seed", "1", "--out-dir"]
        assert main(argv + [str(tmp_path / "a")]) == EXIT_OK
        assert main(argv + [str(tmp_path / "b")]) == EXIT_OK
        name = "suite_trees_seed1.json"
        assert (tmp_path / "a" / name).read_text(encoding="utf-8") == (tmp_path / "b" / name).read_text(encoding="utf-8")

    def test_timing_flag_adds_seconds(self, tmp_path):
        code = main(["bench", "--suite", "trees", "--count", "1", "--timing", "--out-dir", str(tmp_path)])
        assert code == EXIT_OK
        records = json.loads((tmp_path / "suite_trees_seed0.json").read_text(encoding="utf-8"))
        assert all("seconds" in r for r in records)

    def test_rejects_zero_workers(self, tmp_path, capsys):
        code = main(["bench", "--suite", "small", "--workers", "0", "--out-dir", str(tmp_path)])
        assert code == EXIT_ERROR
        assert "--workers" in capsys.readouterr().err


class TestSelectSolver:
    def method_of(self, inst, measure, method="auto"):
        return select_solver(inst, measure, method)(inst).method

    def test_auto_prefers_tree_programs(self):
        assert self.method_of(Instance(PATH5, (0, 4), Goal.con()), Measure.SUM) == "con-sum-tree-dp"

    def test_auto_uses_path_greedy(self):
        assert self.method_of(Instance(PATH5, (1, 2), Goal.ind()), Measure.MAX) == "ind-max-path-greedy"

    def test_auto_uses_mwc_then_falls_back(self, monkeypatch):
        inst = Instance(CYCLE5, (0, 2), Goal.clique())
        assert self.method_of(inst, Measure.NUM) == "clique-num-mwc"
        monkeypatch.setenv("PEBBLE_MWC_LIMIT", "4")
        assert self.method_of(inst, Measure.NUM) == "clique-num-vertex-cover"

    def test_auto_approximation_and_oracle(self):
        assert self.method_of(Instance(CYCLE5, (0, 1), Goal.ind()), Measure.MAX) == "ind-max-mis-matching"
        assert self.method_of(Instance(CYCLE5, (0, 2), Goal.con()), Measure.MAX) == "oracle"
        assert self.method_of(Instance(CYCLE5, (0, 1), Goal.ind()), Measure.SUM) == "oracle-ind"

    def test_exact_without_polynomial_solver(self):
        with pytest.raises(InstanceError, match="no exact polynomial solver"):
            select_solver(Instance(PATH5, (0,), Goal.con()), Measure.MAX, "exact")
        with pytest.raises(InstanceError, match="path graph"):
            select_solver(Instance(CYCLE5, (0,), Goal.ind()), Measure.MAX, "exact")

    def test_unknown_method(self):
        with pytest.raises(InstanceError, match="unknown method"):
            select_solver(Instance(PATH5, (0,), Goal.con()), Measure.MAX, "guess")
