#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Pebble motion solver - command-line front end.

Subcommands:
    solve   solve an instance file under a measure (sum, max, num)
    verify  check a solution file against an instance and print its costs
    gen     generate reduction instances from a DIMACS formula or a graph
    bench   run a seeded benchmark suite and write its JSON records

Exit codes: 0 solved / verified, 2 infeasible, 1 any error, 130 interrupted.
"""

import argparse
import json
import logging
import sys
from datetime import datetime

from approx_solvers import (
    approx_clique_max,
    approx_clique_num,
    approx_clique_sum,
    approx_ind_max,
    approx_stcut_max,
    approx_stcut_sum,
    exact_clique_num_mwc,
)
from bench_suites import SUITES, run_suite, write_suite
from combinatorial_primitives import max_independent_set
from config import BENCH_OUTPUT_DIR, MWC_LIMIT_ENV, env_limit
from errors import InstanceError, PebbleMotionError
from gadgets import (
    gen_clique_max_from_domclique,
    gen_clique_num_from_vc,
    gen_clique_sum_from_vc,
    gen_ind_gadget,
    gen_stcut_gadget,
    is_satisfiable,
    read_dimacs,
)
from graph_core import is_path, is_tree
from instance_io import format_instance, parse_graph_fragment, parse_instance, parse_solution
from instance_model import GoalKind, Measure, solution_cost, validate
from oracle import oracle_clique, oracle_ind, oracle_solve
from path_ind_max import solve_ind_max_on_path
from tree_dp_solvers import (
    solve_con_num_tree,
    solve_con_sum_tree,
    solve_ind_num_tree,
    solve_ind_sum_tree,
)

logger = logging.getLogger("run_pebble_motion")

EXIT_OK = 0
EXIT_ERROR = 1
EXIT_INFEASIBLE = 2

METHOD_CHOICES = ("auto", "exact", "approx", "oracle")
GEN_KINDS = ("ind-gadget", "stcut-gadget", "clique-num-vc", "clique-sum-vc", "clique-max-dc")


def print_banner(title):
    print("=" * 60)
    print(title)
    print("=" * 60)
    print(f"Run time: {datetime.now().strftime('%Y-%m-%d %H:%M:%S')}")
    print("-" * 60)


def print_step(step_num, total, title):
    print(f"\n[Step {step_num}/{total}] {title}")
    print("-" * 60)


def read_text(path):
    if path == "-":
        return sys.stdin.read()
    with open(path, "r", encoding="utf-8") as f:
        return f.read()


def write_text(path, text):
    if path is None or path == "-":
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as f:
        f.write(text)


# solver dispatch ------------------------------------------------------------

_TREE_DP = {
    (GoalKind.CON, Measure.SUM): solve_con_sum_tree,
    (GoalKind.CON, Measure.NUM): solve_con_num_tree,
    (GoalKind.IND, Measure.SUM): solve_ind_sum_tree,
    (GoalKind.IND, Measure.NUM): solve_ind_num_tree,
}


def _ind_max_approx(inst):
    return approx_ind_max(inst, max_independent_set(inst.graph))


_APPROX = {
    (GoalKind.IND, Measure.MAX): _ind_max_approx,
    (GoalKind.CLIQUE, Measure.MAX): approx_clique_max,
    (GoalKind.CLIQUE, Measure.NUM): approx_clique_num,
    (GoalKind.CLIQUE, Measure.SUM): approx_clique_sum,
    (GoalKind.STCUT, Measure.MAX): approx_stcut_max,
    (GoalKind.STCUT, Measure.SUM): approx_stcut_sum,
}


def _oracle_for(inst, measure):
    kind = inst.goal.kind
    if kind is GoalKind.IND:
        return lambda i: oracle_ind(i, measure)
    if kind is GoalKind.CLIQUE:
        return lambda i: oracle_clique(i, measure)
    return lambda i: oracle_solve(i, measure)


def _exact_for(inst, measure, force):
    key = (inst.goal.kind, measure)
    if key in _TREE_DP:
        # the tree solvers raise NotATreeError on a non-tree graph
        return _TREE_DP[key]
    if key == (GoalKind.IND, Measure.MAX):
        if not is_path(inst.graph):
            raise InstanceError("exact Ind-Max solver requires a path graph; use --method oracle")
        return solve_ind_max_on_path
    if key == (GoalKind.CLIQUE, Measure.NUM):
        return lambda i: exact_clique_num_mwc(i, force=force)
    raise InstanceError(
        f"no exact polynomial solver for {inst.goal.kind.value}-{measure.value}; use --method oracle"
    )


def select_solver(inst, measure, method="auto", force=False):
    """The solver callable for ``method``; auto prefers exact, then approx, then oracle."""
    key = (inst.goal.kind, measure)
    if method == "exact":
        return _exact_for(inst, measure, force)
    if method == "approx":
        if key not in _APPROX:
            raise InstanceError(
                f"no approximation for {inst.goal.kind.value}-{measure.value}; use --method exact or oracle"
            )
        return _APPROX[key]
    if method == "oracle":
        return _oracle_for(inst, measure)
    if method != "auto":
        raise InstanceError(f"unknown method {method!r}")

    if key in _TREE_DP and is_tree(inst.graph):
        return _TREE_DP[key]
    if key == (GoalKind.IND, Measure.MAX) and is_path(inst.graph):
        return solve_ind_max_on_path
    if key == (GoalKind.CLIQUE, Measure.NUM) and inst.n <= env_limit(MWC_LIMIT_ENV):
        return exact_clique_num_mwc
    if key in _APPROX:
        return _APPROX[key]
    return _oracle_for(inst, measure)


# subcommands ----------------------------------------------------------------

def cmd_solve(args):
    inst = parse_instance(read_text(args.input))
    measure = Measure(args.measure)
    solver = select_solver(inst, measure, args.method, args.force)
    logger.debug("solve: n=%d m=%d k=%d goal=%s measure=%s method=%s",
                 inst.n, inst.graph.edge_count, inst.k, inst.goal, measure.value, args.method)
    result = solver(inst)

    if args.json:
        print(json.dumps(result.to_json(), ensure_ascii=False, indent=2))
        return EXIT_OK if result.feasible else EXIT_INFEASIBLE

    print_banner("Pebble motion solver")
    print(f"instance: n={inst.n} m={inst.graph.edge_count} k={inst.k} goal={inst.goal}")
    if not result.feasible:
        print(f"❌ infeasible under {result.measure.value} ({result.method}): {result.reason}")
        return EXIT_INFEASIBLE
    print(f"✅ cost {result.cost} ({result.measure.value}) via {result.method} [{result.guarantee}]")
    for p, (start, end) in enumerate(zip(inst.sigma, result.solution.mu)):
        print(f"   pebble {p}: {start} -> {end}")
    print("=" * 60)
    return EXIT_OK


def cmd_verify(args):
    inst = parse_instance(read_text(args.input))
    sol = parse_solution(read_text(args.solution), inst.k)
    valid = validate(inst, sol)
    costs = {}
    if valid:
        costs = {m.value: solution_cost(inst, sol, m) for m in Measure}

    if args.json:
        print(json.dumps({"valid": valid, "costs": costs, "mu": list(sol.mu)}, ensure_ascii=False, indent=2))
        return EXIT_OK if valid else EXIT_ERROR

    print_banner("Pebble motion solution check")
    if not valid:
        print(f"❌ end configuration does not satisfy goal {inst.goal}")
        return EXIT_ERROR
    print(f"✅ valid for goal {inst.goal}")
    for name, cost in costs.items():
        print(f"   {name}: {cost}")
    return EXIT_OK


def _generate(args):
    """The gadget for args.kind, plus the source formula for the CNF kinds."""
    if args.kind in ("ind-gadget", "stcut-gadget"):
        if not args.cnf:
            raise InstanceError(f"{args.kind} needs --cnf FILE")
        f = read_dimacs(read_text(args.cnf))
        if args.kind == "ind-gadget":
            return gen_ind_gadget(f), f
        return gen_stcut_gadget(f, args.h), f
    if not args.graph:
        raise InstanceError(f"{args.kind} needs --graph FILE")
    h = parse_graph_fragment(read_text(args.graph))
    if args.kind == "clique-num-vc":
        return gen_clique_num_from_vc(h), None
    if args.kind == "clique-sum-vc":
        return gen_clique_sum_from_vc(h), None
    return gen_clique_max_from_domclique(h), None


def cmd_gen(args):
    gadget, formula = _generate(args)
    write_text(args.out, format_instance(gadget.instance))
    if args.out and args.out != "-":
        inst = gadget.instance
        print(f"✅ {args.kind}: n={inst.n} m={inst.graph.edge_count} k={inst.k} -> {args.out}")
        for measure, bound in sorted(gadget.threshold.items(), key=lambda item: item[0].value):
            print(f"   satisfiable iff optimum {measure.value} <= {bound}")
        if formula is not None:
            verdict = "satisfiable" if is_satisfiable(formula) else "unsatisfiable"
            print(f"  📊 formula ({formula.variable_count} variables) is {verdict}")
    return EXIT_OK


def cmd_bench(args):
    if args.workers < 1:
        raise InstanceError(f"--workers must be at least 1, got {args.workers}")
    print_banner(f"Pebble motion benchmark: suite {args.suite}, seed {args.seed}")

    print_step(1, 2, "Running cases")
    records = run_suite(args.suite, args.seed, args.count, args.workers, args.timing)
    broken = [r for r in records if not r["within_guarantee"]]
    print(f"  📊 cases: {len(records)}")
    print(f"  ⭐ within guarantee: {len(records) - len(broken)}")
    for r in broken:
        print(f"  ⚠️  {r['label']} {r['method']}: cost {r['cost']} vs oracle {r['oracle_cost']}")

    print_step(2, 2, "Writing results")
    path = write_suite(records, args.suite, args.seed, args.out_dir)
    print(f"✅ results saved: {path}")
    print("=" * 60)
    return EXIT_OK if not broken else EXIT_ERROR


def build_parser():
    ap = argparse.ArgumentParser(description=__doc__, formatter_class=argparse.RawDescriptionHelpFormatter)
    ap.add_argument("--verbose", "-v", action="store_true", help="debug logging on stderr")
    sub = ap.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="solve an instance file")
    solve.add_argument("--measure", required=True, choices=[m.value for m in Measure])
    solve.add_argument("--method", default="auto", choices=METHOD_CHOICES)
    solve.add_argument("--in", dest="input", required=True, help="instance file, or - for stdin")
    solve.add_argument("--json", action="store_true", help="machine-readable output")
    solve.add_argument("--force", action="store_true", help="run the exact clique solver past its size guard")
    solve.set_defaults(handler=cmd_solve)

    verify = sub.add_parser("verify", help="check a solution file")
    verify.add_argument("--in", dest="input", required=True)
    verify.add_argument("--solution", required=True)
    verify.add_argument("--json", action="store_true")
    verify.set_defaults(handler=cmd_verify)

    gen = sub.add_parser("gen", help="generate a reduction instance")
    gen.add_argument("kind", choices=GEN_KINDS)
    gen.add_argument("--cnf", help="DIMACS 3-CNF file (ind-gadget, stcut-gadget)")
    gen.add_argument("--graph", help="graph fragment file (clique-* kinds)")
    gen.add_argument("--h", type=int, default=None, help="long-path length for stcut-gadget")
    gen.add_argument("--out", default=None, help="output instance file (default stdout)")
    gen.set_defaults(handler=cmd_gen)

    bench = sub.add_parser("bench", help="run a benchmark suite")
    bench.add_argument("--suite", required=True, choices=SUITES)
    bench.add_argument("--seed", type=int, default=0)
    bench.add_argument("--count", type=int, default=None, help="random cases (small, trees)")
    bench.add_argument("--workers", type=int, default=1)
    bench.add_argument("--timing", action="store_true", help="add wall-clock seconds to each record")
    bench.add_argument("--out-dir", default=BENCH_OUTPUT_DIR)
    bench.set_defaults(handler=cmd_bench)
    return ap


def main(argv=None):
    args = build_parser().parse_args(argv)
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.WARNING,
        format="%(levelname)s %(name)s: %(message)s",
    )
    try:
        return args.handler(args)
    except (PebbleMotionError, OSError) as e:
        print(f"❌ {e}", file=sys.stderr)
        return EXIT_ERROR


if __name__ == "__main__":
    try:
        sys.exit(main())
    except KeyboardInterrupt:
        print("\n\n⚠️  Interrupted by user")
        sys.exit(130)
    except Exception as e:
        print(f"\n\n❌ Unexpected failure: {e}")
        import traceback
        traceback.print_exc()
        sys.exit(1)
