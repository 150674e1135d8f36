#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Brute-force exact solvers used as ground truth for every other solver.

All searches are guarded: when the search space would exceed the configured
limit they raise GuardExceededError instead of truncating.
"""

import bisect
import functools
import itertools
import logging
import math

import networkx as nx
import numpy as np
from scipy.optimize import linear_sum_assignment
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from config import IND_ORACLE_LIMIT_ENV, ORACLE_LIMIT_ENV, env_limit
from errors import GuardExceededError
from graph_core import Graph, bfs_distances
from instance_model import (
    GoalKind,
    Guarantee,
    Infeasible,
    Measure,
    Solution,
    make_report,
    phi,
    predicate_holds,
    require_goal,
)

logger = logging.getLogger(__name__)


def _predicate_cache(inst):
    """The goal predicate memoised per set of end vertices."""

    @functools.lru_cache(maxsize=None)
    def holds(end_set):
        return predicate_holds(inst, end_set)

    return holds


def _combine(measure, partial, step):
    if measure is Measure.SUM:
        return partial + step
    if measure is Measure.MAX:
        return max(partial, step)
    return partial + (step > 0)


def oracle_solve(inst, measure):
    """Exhaustive search over all end maps, lexicographically smallest optimum.

    Branches whose partial cost already reaches the incumbent are cut; any
    completion of them would cost at least as much and come later in order.
    """
    limit = env_limit(ORACLE_LIMIT_ENV)
    space = inst.n ** inst.k
    if space > limit:
        raise GuardExceededError("placement enumeration", space, limit, ORACLE_LIMIT_ENV)

    rows = [bfs_distances(inst.graph, s) for s in inst.sigma]
    holds = _predicate_cache(inst)
    injective = inst.goal.kind is GoalKind.IND
    best_cost = None
    best_mu = None
    mu = [0] * inst.k
    used = [False] * inst.n

    def search(p, partial):
        nonlocal best_cost, best_mu
        if p == inst.k:
            if holds(frozenset(mu)):
                best_cost, best_mu = partial, tuple(mu)
            return
        for v in range(inst.n):
            if injective and used[v]:
                continue
            cost = _combine(measure, partial, rows[p][v])
            if best_cost is not None and cost >= best_cost:
                continue
            mu[p] = v
            used[v] = True
            search(p + 1, cost)
            used[v] = False
            if best_cost == 0:
                return

    search(0, 0)
    if best_mu is None:
        return Infeasible(measure, "oracle", "no end configuration satisfies the goal")
    logger.debug("oracle: %d predicate sets evaluated, optimum %d", holds.cache_info().currsize, best_cost)
    return make_report(inst, best_mu, measure, Guarantee.exact(), "oracle")


def _independent_sets(graph, size):
    """All independent sets of the given size, as sorted tuples in lexicographic order."""
    found = []
    for clique in nx.enumerate_all_cliques(nx.complement(graph.nx_view())):
        if len(clique) > size:
            break
        if len(clique) == size:
            found.append(tuple(sorted(clique)))
    return sorted(found)


def _bottleneck_assignment(distances):
    """Row -> column assignment minimising the largest entry (threshold + matching)."""
    values = np.unique(distances)

    def saturates(threshold):
        matched = maximum_bipartite_matching(csr_matrix(distances <= threshold), perm_type="column")
        return not (matched == -1).any()

    i = bisect.bisect_left(range(len(values)), True, key=lambda j: saturates(values[j]))
    threshold = values[i]
    columns = maximum_bipartite_matching(csr_matrix(distances <= threshold), perm_type="column")
    return int(threshold), [int(c) for c in columns]


def oracle_ind(inst, measure):
    """Exact Ind optimum by enumerating independent k-sets and assigning optimally."""
    require_goal(inst, GoalKind.IND)
    method = "oracle-ind"
    if inst.k > inst.n:
        return Infeasible(measure, method, f"{inst.k} pebbles cannot be independent on {inst.n} vertices")
    limit = env_limit(IND_ORACLE_LIMIT_ENV)
    space = math.comb(inst.n, inst.k)
    if space > limit:
        raise GuardExceededError("independent-set enumeration", space, limit, IND_ORACLE_LIMIT_ENV)

    rows = np.array([bfs_distances(inst.graph, s) for s in inst.sigma], dtype=np.int64)
    counts = phi(inst)
    best_cost, best_mu = None, None
    examined = 0
    for u_set in _independent_sets(inst.graph, inst.k):
        examined += 1
        distances = rows[:, list(u_set)]
        if measure is Measure.SUM:
            r, c = linear_sum_assignment(distances)
            cost = int(distances[r, c].sum())
            mu = [None] * inst.k
            for p, i in zip(r, c):
                mu[p] = u_set[i]
        elif measure is Measure.MAX:
            if best_cost is not None and distances.min(axis=1).max() >= best_cost:
                continue
            cost, columns = _bottleneck_assignment(distances)
            mu = [u_set[i] for i in columns]
        else:
            occupied = [v for v in u_set if counts[v] >= 1]
            cost = inst.k - len(occupied)
            if best_cost is not None and cost >= best_cost:
                continue
            mu = [None] * inst.k
            resident_of = {}
            for p, s in enumerate(inst.sigma):
                if s in occupied and s not in resident_of:
                    resident_of[s] = p
                    mu[p] = s
            vacant = iter(v for v in u_set if v not in resident_of)
            mu = [m if m is not None else next(vacant) for m in mu]
        if best_cost is None or cost < best_cost:
            best_cost, best_mu = cost, mu
            if cost == 0:
                break

    logger.debug("oracle-ind: %d independent sets examined", examined)
    if best_mu is None:
        return Infeasible(measure, method, f"the graph has no independent set of size {inst.k}")
    return make_report(inst, best_mu, measure, Guarantee.exact(), method)


def oracle_bounded(inst, radius, measure=Measure.MAX):
    """Any end map moving every pebble at most ``radius``, or Infeasible."""
    method = "oracle-bounded"
    if measure is not Measure.MAX:
        raise ValueError("oracle_bounded decides Max-cost bounds only")
    balls = []
    for s in inst.sigma:
        row = bfs_distances(inst.graph, s)
        balls.append([v for v in range(inst.n) if row[v] <= radius])
    limit = env_limit(ORACLE_LIMIT_ENV)
    space = math.prod(len(ball) for ball in balls)
    if space > limit:
        raise GuardExceededError("bounded-radius enumeration", space, limit, ORACLE_LIMIT_ENV)

    holds = _predicate_cache(inst)
    injective = inst.goal.kind is GoalKind.IND
    for mu in itertools.product(*balls):
        if injective and len(set(mu)) != inst.k:
            continue
        if holds(frozenset(mu)):
            return Solution(mu)
    return Infeasible(measure, method, f"no solution moves every pebble at most {radius}")


def _clique_limit_check(n, what):
    limit = env_limit(ORACLE_LIMIT_ENV)
    if 2 ** n > limit:
        raise GuardExceededError(what, 2 ** n, limit, ORACLE_LIMIT_ENV)


def oracle_clique(inst, measure):
    """Exact Clique optimum: best clique Q, every pebble to its nearest vertex of Q."""
    require_goal(inst, GoalKind.CLIQUE)
    _clique_limit_check(inst.n, "clique enumeration")
    rows = [bfs_distances(inst.graph, s) for s in inst.sigma]
    best_cost, best_mu = None, None
    for clique in nx.enumerate_all_cliques(inst.graph.nx_view()):
        members = sorted(clique)
        if measure is Measure.NUM:
            inside = set(members)
            mu = [s if s in inside else members[0] for s in inst.sigma]
            cost = sum(s not in inside for s in inst.sigma)
        else:
            mu = [min(members, key=lambda v: (row[v], v)) for row in rows]
            moves = [row[v] for row, v in zip(rows, mu)]
            cost = sum(moves) if measure is Measure.SUM else max(moves)
        if best_cost is None or cost < best_cost:
            best_cost, best_mu = cost, mu
    return make_report(inst, best_mu, measure, Guarantee.exact(), "oracle-clique")


def _as_nx(h):
    return h.nx_view() if isinstance(h, Graph) else h


def min_vertex_cover_bruteforce(h):
    """A minimum vertex cover by increasing-size subset search."""
    view = _as_nx(h)
    nodes = sorted(view.nodes)
    _clique_limit_check(len(nodes), "vertex cover enumeration")
    edges = list(view.edges)
    for size in range(len(nodes) + 1):
        for cover in itertools.combinations(nodes, size):
            chosen = set(cover)
            if all(u in chosen or v in chosen for u, v in edges):
                return frozenset(chosen)
    return frozenset(nodes)


def has_dominating_clique(h):
    """True iff some clique of ``h`` is also a dominating set."""
    view = _as_nx(h)
    _clique_limit_check(view.number_of_nodes(), "dominating clique enumeration")
    everything = set(view.nodes)
    for clique in nx.enumerate_all_cliques(view):
        reached = set(clique)
        for v in clique:
            reached.update(view.adj[v])
        if reached == everything:
            return True
    return False
