#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Approximation algorithms for general graphs, plus the exact Clique-Num solver
based on a maximum-weight clique.

Every solver returns a SolveReport (built by ``make_report`` so the cost is
recomputed) or an ``Infeasible`` value; the guarantee on the report states how
far the cost may be from the optimum.
"""

import bisect
import logging
from dataclasses import dataclass

import networkx as nx

from combinatorial_primitives import (
    BipartiteGraph,
    max_bipartite_matching,
    max_weight_clique,
    min_st_vertex_cut,
    vertex_cover_2approx,
)
from config import MWC_LIMIT_ENV, env_limit
from errors import GuardExceededError, InstanceError
from graph_core import Graph, bfs_distances, diameter
from instance_model import (
    Goal,
    GoalKind,
    Guarantee,
    Infeasible,
    Instance,
    Measure,
    make_report,
    phi,
    predicate_holds,
    require_goal,
)

logger = logging.getLogger(__name__)


def _start_distances(inst):
    """BFS rows keyed by every distinct start vertex."""
    return {v: bfs_distances(inst.graph, v) for v in set(inst.sigma)}


# Ind-Max --------------------------------------------------------------------

def _saturating_assignment(inst, rows, targets, z):
    edges = [
        (p, i)
        for p, start in enumerate(inst.sigma)
        for i, v in enumerate(targets)
        if rows[start][v] <= z
    ]
    matching = max_bipartite_matching(BipartiteGraph(inst.k, len(targets), tuple(edges)))
    if len(matching) < inst.k:
        return None
    partner = matching.partner_of_left()
    return [targets[partner[p]] for p in range(inst.k)]


def approx_ind_max(inst, mis):
    """Match pebbles into a maximum independent set with the smallest bound z.

    The result costs at most one more than the optimum.
    """
    require_goal(inst, GoalKind.IND)
    method = "ind-max-mis-matching"
    targets = sorted(set(mis))
    for i, u in enumerate(targets):
        for v in targets[i + 1:]:
            if inst.graph.has_edge(u, v):
                raise InstanceError(f"supplied set is not independent: {u} and {v} are adjacent")
    if inst.k > len(targets):
        return Infeasible(Measure.MAX, method,
                          f"{inst.k} pebbles exceed the maximum independent set size {len(targets)}")

    rows = _start_distances(inst)
    bound = diameter(inst.graph)
    z = bisect.bisect_left(
        range(bound + 1), True,
        key=lambda limit: _saturating_assignment(inst, rows, targets, limit) is not None,
    )
    mu = _saturating_assignment(inst, rows, targets, z)
    if mu is None or (z > 0 and _saturating_assignment(inst, rows, targets, z - 1) is not None):
        raise InstanceError(f"matching feasibility is not monotone around z={z}")
    logger.debug("ind-max: |mis|=%d, smallest saturating bound z=%d", len(targets), z)
    return make_report(inst, mu, Measure.MAX, Guarantee.additive_plus_one(), method)


# Clique-Max -----------------------------------------------------------------

def approx_clique_max(inst):
    """Move every pebble to the single vertex with the smallest maximum distance."""
    require_goal(inst, GoalKind.CLIQUE)
    rows = _start_distances(inst)
    best = min(range(inst.n), key=lambda u: (max(rows[s][u] for s in inst.sigma), u))
    return make_report(inst, [best] * inst.k, Measure.MAX, Guarantee.additive_plus_one(),
                       "clique-max-single-vertex")


# Clique-Num -----------------------------------------------------------------

@dataclass(frozen=True)
class CliqueExpansion:
    expanded_graph: Graph
    vertex_origin: tuple
    expanded_sigma: tuple


def expand_cliques(inst):
    """Replace each vertex holding several pebbles by a clique with one pebble per copy."""
    counts = phi(inst)
    origin = []
    copies = []
    for u in range(inst.n):
        first = len(origin)
        for _ in range(max(counts[u], 1)):
            origin.append(u)
        copies.append(range(first, len(origin)))

    edges = []
    for u in range(inst.n):
        block = list(copies[u])
        edges.extend((a, b) for i, a in enumerate(block) for b in block[i + 1:])
    for u, v in sorted(inst.graph.edges):
        edges.extend((a, b) for a in copies[u] for b in copies[v])

    used = [0] * inst.n
    expanded_sigma = []
    for start in inst.sigma:
        expanded_sigma.append(copies[start][used[start]])
        used[start] += 1
    return CliqueExpansion(Graph(len(origin), edges), tuple(origin), tuple(expanded_sigma))


def _clique_num_targets(inst):
    """Per pebble: stay (None) or the vertex it moves to, from the vertex-cover rule."""
    expansion = expand_cliques(inst)
    pebbled = set(expansion.expanded_sigma)
    h = expansion.expanded_graph.nx_view().subgraph(pebbled)
    cover = vertex_cover_2approx(nx.complement(h))
    kept = sorted(pebbled - cover)
    logger.debug("clique-num: %d pebbled vertices, cover %d, kept %d", len(pebbled), len(cover), len(kept))
    if not kept:
        counts = phi(inst)
        hub = max(range(inst.n), key=lambda u: (counts[u], -u))
        return [None if s == hub else hub for s in inst.sigma]
    hub = expansion.vertex_origin[kept[0]]
    kept = set(kept)
    return [None if e in kept else hub for e in expansion.expanded_sigma]


def approx_clique_num(inst):
    """2-approximation: keep the pebbles on the complement of a vertex cover of H-bar."""
    require_goal(inst, GoalKind.CLIQUE)
    targets = _clique_num_targets(inst)
    mu = [s if t is None else t for s, t in zip(inst.sigma, targets)]
    return make_report(inst, mu, Measure.NUM, Guarantee.ratio(2), "clique-num-vertex-cover")


def exact_clique_num_mwc(inst, force=False):
    """Exact Clique-Num: keep the pebbles on a maximum-weight clique (weights phi)."""
    require_goal(inst, GoalKind.CLIQUE)
    limit = env_limit(MWC_LIMIT_ENV)
    if inst.n > limit and not force:
        raise GuardExceededError("maximum-weight clique", inst.n, limit, MWC_LIMIT_ENV)
    clique = max_weight_clique(inst.graph, phi(inst))
    hub = min(clique)
    mu = [s if s in clique else hub for s in inst.sigma]
    return make_report(inst, mu, Measure.NUM, Guarantee.exact(), "clique-num-mwc")


# Clique-Sum -----------------------------------------------------------------

def _around_vertex(inst, u, rows):
    """Candidate that gathers at u, letting a Clique-Num sub-solution keep neighbours in place."""
    near = [p for p, s in enumerate(inst.sigma) if rows[s][u] == 1]
    if not near:
        return None
    local_vertices = sorted({inst.sigma[p] for p in near} | {u})
    local = {v: i for i, v in enumerate(local_vertices)}
    sub_graph = Graph(
        len(local_vertices),
        [(local[a], local[b]) for a, b in inst.graph.nx_view().subgraph(local_vertices).edges],
    )
    sub = Instance(sub_graph, tuple(local[inst.sigma[p]] for p in near), Goal.clique())
    stays = {p for p, t in zip(near, _clique_num_targets(sub)) if t is None}
    return [s if p in stays else u for p, s in enumerate(inst.sigma)]


def approx_clique_sum(inst):
    """2-approximation: best of all-to-u and the neighbourhood-of-u candidates."""
    require_goal(inst, GoalKind.CLIQUE)
    rows = _start_distances(inst)
    counts = phi(inst)
    candidates = [[u] * inst.k for u in range(inst.n)]
    for u in range(inst.n):
        if counts[u] >= 1:
            mu = _around_vertex(inst, u, rows)
            if mu is not None:
                candidates.append(mu)

    def total(mu):
        return sum(rows[s][e] for s, e in zip(inst.sigma, mu))

    best = min(candidates, key=total)
    return make_report(inst, best, Measure.SUM, Guarantee.ratio(2), "clique-sum-neighbourhood")


# s-t-Cut --------------------------------------------------------------------

def _stcut_solution(inst, measure, method):
    require_goal(inst, GoalKind.STCUT)
    s, t = inst.goal.s, inst.goal.t
    if predicate_holds(inst, inst.sigma):
        return make_report(inst, inst.sigma, measure, Guarantee.exact(), method)
    if inst.graph.has_edge(s, t):
        return Infeasible(measure, method, f"s={s} and t={t} are adjacent; no vertex cut exists")
    cut = sorted(min_st_vertex_cut(inst.graph, s, t))
    if len(cut) > inst.k:
        return Infeasible(measure, method,
                          f"minimum s-t vertex cut has {len(cut)} vertices but only {inst.k} pebbles")

    rows = {c: bfs_distances(inst.graph, c) for c in cut}
    mu = [None] * inst.k
    free = set(range(inst.k))
    for c in cut:
        p = min(free, key=lambda q: (rows[c][inst.sigma[q]], q))
        mu[p] = c
        free.discard(p)
    for p in sorted(free):
        mu[p] = min(cut, key=lambda c: (rows[c][inst.sigma[p]], c))

    d = diameter(inst.graph)
    rho = d if measure is Measure.MAX else inst.k * d
    logger.debug("stcut-%s: cut %s, diameter %d", measure.value, cut, d)
    return make_report(inst, mu, measure, Guarantee.ratio(rho), method)


def approx_stcut_max(inst):
    """Cover a minimum s-t vertex cut with pebbles; within a factor d of optimal."""
    return _stcut_solution(inst, Measure.MAX, "stcut-max-min-cut")


def approx_stcut_sum(inst):
    """Same construction as approx_stcut_max, within a factor k*d under Sum."""
    return _stcut_solution(inst, Measure.SUM, "stcut-sum-min-cut")


def stcut_sum_via_num(inst, num_solver, rho=1):
    """Re-evaluate a rho-approximate s-t-Cut-Num solution under Sum (factor rho*d)."""
    require_goal(inst, GoalKind.STCUT)
    method = "stcut-sum-via-num"
    inner = num_solver(inst)
    if not inner.feasible:
        return Infeasible(Measure.SUM, method, inner.reason)
    d = diameter(inst.graph)
    return make_report(inst, inner.solution, Measure.SUM, Guarantee.ratio(rho * d), method)
