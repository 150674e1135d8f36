#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Seeded benchmark suites: every solver against its exact oracle.

A suite is a list of BenchCase values built deterministically from a seed.
Cases hold plain data only (edge tuples, goal text, formula clauses) so they
can be shipped to worker processes; each worker rebuilds the instance, runs
the solver and the oracle, and returns one JSON-ready record.

Suites:
    small    random connected graphs (n 4-7, k 1-4), Clique / s-t-Cut / Ind
             approximations against the oracles
    trees    random trees (n 5-8, k 1-4) for the four tree programs, plus
             paths for the Ind-Max greedy
    gadgets  fixed 3-CNF formulas through the Ind and s-t-Cut reductions
"""

import functools
import json
import logging
import math
import os
import random
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import networkx as nx

from approx_solvers import (
    approx_clique_max,
    approx_clique_num,
    approx_clique_sum,
    approx_ind_max,
    approx_stcut_max,
    approx_stcut_sum,
    exact_clique_num_mwc,
    stcut_sum_via_num,
)
from combinatorial_primitives import max_independent_set
from config import BENCH_OUTPUT_DIR
from errors import InstanceError
from gadgets import Cnf3, gen_ind_gadget, gen_stcut_gadget, is_satisfiable
from graph_core import Graph
from instance_model import Goal, GoalKind, Instance, Measure, Solution, solution_cost
from oracle import oracle_bounded, oracle_clique, oracle_ind, oracle_solve
from path_ind_max import solve_ind_max_on_path
from tree_dp_solvers import (
    solve_con_num_tree,
    solve_con_sum_tree,
    solve_ind_num_tree,
    solve_ind_sum_tree,
)

logger = logging.getLogger(__name__)

SUITES = ("small", "trees", "gadgets")
DEFAULT_CASE_COUNT = {"small": 24, "trees": 24}

GADGET_FORMULAS = (
    (1, ((1, 1, 1),)),
    (1, ((1, 1, 1), (-1, -1, -1))),
    (2, ((1, 2, 2),)),
    (2, ((1, 2, -1),)),
    (2, ((-1, -2, -2),)),
    (2, ((1, 1, 2), (-1, -1, -2))),
    (2, ((1, 2, 2), (-1, -2, -2))),
)


def _ind_max_via_mis(inst):
    return approx_ind_max(inst, max_independent_set(inst.graph))


def _stcut_sum_via_oracle(inst):
    return stcut_sum_via_num(inst, lambda sub: oracle_solve(sub, Measure.NUM))


# method label -> (measure, solver, reference oracle)
METHODS = {
    "con-sum-tree-dp": (Measure.SUM, solve_con_sum_tree, oracle_solve),
    "con-num-tree-dp": (Measure.NUM, solve_con_num_tree, oracle_solve),
    "ind-sum-tree-dp": (Measure.SUM, solve_ind_sum_tree, oracle_ind),
    "ind-num-tree-dp": (Measure.NUM, solve_ind_num_tree, oracle_ind),
    "ind-max-path-greedy": (Measure.MAX, solve_ind_max_on_path, oracle_ind),
    "ind-max-mis-matching": (Measure.MAX, _ind_max_via_mis, oracle_ind),
    "clique-max-single-vertex": (Measure.MAX, approx_clique_max, oracle_clique),
    "clique-num-vertex-cover": (Measure.NUM, approx_clique_num, oracle_clique),
    "clique-num-mwc": (Measure.NUM, exact_clique_num_mwc, oracle_clique),
    "clique-sum-neighbourhood": (Measure.SUM, approx_clique_sum, oracle_clique),
    "stcut-max-min-cut": (Measure.MAX, approx_stcut_max, oracle_solve),
    "stcut-sum-min-cut": (Measure.SUM, approx_stcut_sum, oracle_solve),
    "stcut-sum-via-num": (Measure.SUM, _stcut_sum_via_oracle, oracle_solve),
}

GADGET_METHODS = ("ind-gadget-max", "ind-gadget-sum", "stcut-gadget-bounded")

_GOAL_METHODS = {
    GoalKind.CLIQUE: ("clique-max-single-vertex", "clique-num-vertex-cover",
                      "clique-num-mwc", "clique-sum-neighbourhood"),
    GoalKind.STCUT: ("stcut-max-min-cut", "stcut-sum-min-cut", "stcut-sum-via-num"),
    GoalKind.IND: ("ind-max-mis-matching",),
}


@dataclass(frozen=True)
class BenchCase:
    suite: str
    seed: int
    label: str
    method: str
    n: int = 0
    edges: tuple = ()
    sigma: tuple = ()
    goal: str = ""
    formula: tuple = None


def goal_from_text(text):
    parts = text.split()
    return Goal(GoalKind(parts[0]), *(int(x) for x in parts[1:]))


def instance_of(case):
    return Instance(Graph(case.n, case.edges), case.sigma, goal_from_text(case.goal))


# generation -----------------------------------------------------------------

def random_tree_edges(rng, n):
    if n == 1:
        return ()
    if n == 2:
        return ((0, 1),)
    tree = nx.from_prufer_sequence([rng.randrange(n) for _ in range(n - 2)])
    return tuple(sorted((min(u, v), max(u, v)) for u, v in tree.edges))


def random_connected_edges(rng, n, extra=0.3):
    """A random spanning tree plus every other pair with probability ``extra``."""
    edges = set(random_tree_edges(rng, n))
    for u in range(n):
        for v in range(u + 1, n):
            if (u, v) not in edges and rng.random() < extra:
                edges.add((u, v))
    return tuple(sorted(edges))


def _random_sigma(rng, n, k):
    return tuple(rng.randrange(n) for _ in range(k))


def _small_cases(seed, count):
    rng = random.Random(seed)
    kinds = (GoalKind.CLIQUE, GoalKind.STCUT, GoalKind.IND)
    cases = []
    for i in range(count):
        kind = kinds[i % len(kinds)]
        n = rng.randint(4, 7)
        edges = random_connected_edges(rng, n)
        k = rng.randint(1, 4)
        if kind is GoalKind.STCUT:
            s, t = rng.sample(range(n), 2)
            goal = str(Goal.stcut(s, t))
        else:
            goal = kind.value
        sigma = _random_sigma(rng, n, k)
        label = f"small-{i:03d}"
        cases.extend(BenchCase("small", seed, label, m, n, edges, sigma, goal) for m in _GOAL_METHODS[kind])
    return cases


def _tree_cases(seed, count):
    rng = random.Random(seed)
    cases = []
    for i in range(count):
        n = rng.randint(5, 8)
        edges = random_tree_edges(rng, n)
        sigma = _random_sigma(rng, n, rng.randint(1, 4))
        label = f"tree-{i:03d}"
        for method in ("con-sum-tree-dp", "con-num-tree-dp"):
            cases.append(BenchCase("trees", seed, label, method, n, edges, sigma, "con"))
        for method in ("ind-sum-tree-dp", "ind-num-tree-dp"):
            cases.append(BenchCase("trees", seed, label, method, n, edges, sigma, "ind"))

        n_path = rng.randint(4, 10)
        order = list(range(n_path))
        rng.shuffle(order)
        path_edges = tuple(sorted((min(a, b), max(a, b)) for a, b in zip(order, order[1:])))
        path_sigma = _random_sigma(rng, n_path, rng.randint(1, math.ceil(n_path / 2)))
        cases.append(BenchCase("trees", seed, f"path-{i:03d}", "ind-max-path-greedy",
                               n_path, path_edges, path_sigma, "ind"))
    return cases


def _gadget_cases(seed):
    cases = []
    for i, formula in enumerate(GADGET_FORMULAS):
        label = f"cnf-{i:02d}"
        cases.extend(BenchCase("gadgets", seed, label, m, formula=formula) for m in GADGET_METHODS)
    return cases


def build_suite(name, seed, count=None):
    """All cases of a suite, in a deterministic order."""
    if name not in SUITES:
        raise InstanceError(f"unknown suite {name!r} (expected one of {', '.join(SUITES)})")
    if name == "gadgets":
        return _gadget_cases(seed)
    count = DEFAULT_CASE_COUNT[name] if count is None else count
    if count < 0:
        raise InstanceError(f"case count must be non-negative, got {count}")
    if name == "small":
        return _small_cases(seed, count)
    return _tree_cases(seed, count)


# evaluation -----------------------------------------------------------------

def _ratio(cost, optimum):
    if cost is None or optimum is None:
        return None
    if optimum == 0:
        return 1.0 if cost == 0 else None
    return round(cost / optimum, 4)


def _record(case, goal, measure, method, guarantee, cost, oracle_cost, within):
    return {
        "suite": case.suite,
        "seed": case.seed,
        "label": case.label,
        "goal": goal,
        "measure": measure.value,
        "method": method,
        "guarantee": guarantee,
        "cost": cost,
        "oracle_cost": oracle_cost,
        "ratio": _ratio(cost, oracle_cost),
        "within_guarantee": within,
    }


def _run_solver_case(case):
    measure, solver, reference = METHODS[case.method]
    inst = instance_of(case)
    started = time.perf_counter()
    report = solver(inst)
    seconds = time.perf_counter() - started
    truth = reference(inst, measure)

    if report.feasible and truth.feasible:
        within = report.guarantee.allows(report.cost, truth.cost)
    else:
        within = report.feasible == truth.feasible
    guarantee = str(report.guarantee) if report.feasible else None
    return _record(
        case, case.goal, measure, report.method, guarantee,
        report.cost if report.feasible else None,
        truth.cost if truth.feasible else None,
        within,
    ), seconds


def _run_gadget_case(case):
    variable_count, clauses = case.formula
    f = Cnf3(variable_count, clauses)
    satisfiable = is_satisfiable(f)
    started = time.perf_counter()
    if case.method == "stcut-gadget-bounded":
        gadget = gen_stcut_gadget(f)
        measure = Measure.MAX
        found = oracle_bounded(gadget.instance, 1)
        cost = solution_cost(gadget.instance, found, measure) if isinstance(found, Solution) else None
        method = "oracle-bounded"
    else:
        gadget = gen_ind_gadget(f)
        measure = Measure.MAX if case.method == "ind-gadget-max" else Measure.SUM
        truth = oracle_ind(gadget.instance, measure)
        cost = truth.cost if truth.feasible else None
        method = "oracle-ind"
    seconds = time.perf_counter() - started

    threshold = gadget.threshold[measure]
    within = (cost is not None and cost <= threshold) == satisfiable
    record = _record(case, str(gadget.instance.goal), measure, method, "exact", cost, None, within)
    record.update(gadget=case.method, threshold=threshold, satisfiable=satisfiable)
    return record, seconds


def run_case(case, timing=False):
    """Evaluate one case; top-level so a process pool can pickle it.

    Records depend on the case alone; wall-clock ``seconds`` are added only
    with ``timing=True``.
    """
    if case.formula is not None:
        record, seconds = _run_gadget_case(case)
    else:
        record, seconds = _run_solver_case(case)
    if timing:
        record["seconds"] = round(seconds, 6)
    return record


def run_suite(name, seed, count=None, workers=1, timing=False):
    cases = build_suite(name, seed, count)
    logger.info("suite %s seed %d: %d cases on %d worker(s)", name, seed, len(cases), workers)
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(functools.partial(run_case, timing=timing), cases))
    return [run_case(case, timing) for case in cases]


def suite_path(name, seed, out_dir=BENCH_OUTPUT_DIR):
    return os.path.join(out_dir, f"suite_{name}_seed{seed}.json")


def write_suite(records, name, seed, out_dir=BENCH_OUTPUT_DIR):
    os.makedirs(out_dir, exist_ok=True)
    path = suite_path(name, seed, out_dir)
    with open(path, "w", encoding="utf-8") as f:
        json.dump(records, f, ensure_ascii=False, indent=2)
    return path
