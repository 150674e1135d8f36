#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Exact dynamic programs on trees for Con-Sum, Con-Num, Ind-Sum and Ind-Num.

Every DP row has k+1 entries, one per number j of pebbles that end inside a
subtree. Children are combined with a min-plus fold (``optimal_distribution``)
that keeps back-pointers, so the per-vertex final pebble counts can be read
back top-down. Pebbles are then mapped to slots: the Sum solvers use a
bottom-up transport that never sends pebbles both ways across an edge, the Num
solvers keep as many resident pebbles in place as possible.

The Con solvers choose their root by centroid recursion: either some optimal
solution occupies the centroid v, or all pebbles end inside one component of
G - v and everything outside that component must first walk to its vertex
next to v.
"""

import enum
import functools
import logging
from dataclasses import dataclass

import numpy as np

from errors import InstanceError, NotATreeError
from graph_core import RootedTree, bfs_distances, centroid, component_graphs, is_tree
from instance_model import (
    GoalKind,
    Guarantee,
    Infeasible,
    Measure,
    make_report,
    require_goal,
)

logger = logging.getLogger(__name__)

# strictly larger than any reachable cost; sums of two stay inside int64
INF = 2**40


class DistributionMode(enum.Enum):
    AT_MOST = "at_most"
    EXACTLY = "exactly"


@dataclass(frozen=True)
class PebbleCensus:
    """eta: pebbles in each subtree; phi: pebbles starting at each vertex; gamma: phi >= 1."""

    eta: tuple
    phi: tuple
    gamma: tuple


@dataclass
class DPTable:
    tree: RootedTree
    opt: np.ndarray
    opt_plus: np.ndarray = None
    opt_minus: np.ndarray = None
    choice: list = None

    @property
    def k(self):
        return self.opt.shape[1] - 1

    def root_cost(self):
        return int(self.opt[self.tree.root, self.k])


@functools.lru_cache(maxsize=64)
def _shift_index(length):
    # idx[z, h] = h - z, or ``length`` (a padding slot holding INF) when h < z
    z = np.arange(length)[:, None]
    h = np.arange(length)[None, :]
    idx = h - z
    idx[idx < 0] = length
    return idx


def _min_plus(a, b):
    """row[h] = min_z a[z] + b[h - z], with the smallest minimising z."""
    length = len(a)
    padded = np.append(b, INF)
    combined = a[:, None] + padded[_shift_index(length)]
    arg = combined.argmin(axis=0)
    row = np.minimum(combined[arg, np.arange(length)], INF)
    return row, arg


def _unit_row(length):
    row = np.full(length, INF, dtype=np.int64)
    row[0] = 0
    return row


class _Fold:
    """Min-plus fold of child rows; ``row[h]`` is the cheapest split of exactly h."""

    def __init__(self, rows, length):
        row = _unit_row(length)
        self.args = []
        for child_row in rows:
            row, arg = _min_plus(row, child_row)
            self.args.append(arg)
        self.row = row

    def allocate(self, h):
        allocation = [0] * len(self.args)
        for i in range(len(self.args) - 1, -1, -1):
            kept = int(self.args[i][h])
            allocation[i] = h - kept
            h = kept
        return allocation


def _as_cost_row(row, length):
    if len(row) < length:
        raise InstanceError(f"cost row has {len(row)} entries, need {length}")
    return np.array([INF if c >= INF else int(c) for c in list(row)[:length]], dtype=np.int64)


def optimal_distribution(child_costs, budget, mode=DistributionMode.EXACTLY):
    """Cheapest way to spread pebbles over children.

    ``child_costs[i][h]`` is the cost of putting h pebbles in child i. EXACTLY
    distributes ``budget`` pebbles, AT_MOST any number up to ``budget``.
    Returns ``(cost, allocation)``; cost is ``INF`` when nothing is feasible.
    """
    if budget < 0:
        raise InstanceError(f"budget must be non-negative, got {budget}")
    length = budget + 1
    fold = _Fold([_as_cost_row(row, length) for row in child_costs], length)
    if mode is DistributionMode.EXACTLY:
        h = budget
    else:
        h = int(np.argmin(fold.row))
    cost = int(fold.row[h])
    if cost >= INF:
        return INF, None
    return cost, fold.allocate(h)


def pebble_census(tree, sigma, residents=None):
    """Census of start positions; ``residents`` limits which pebbles count in phi."""
    here = [0] * tree.n
    phi = [0] * tree.n
    for p, v in enumerate(sigma):
        here[v] += 1
        if residents is None or residents[p]:
            phi[v] += 1
    eta = list(here)
    for u in tree.postorder:
        for c in tree.children[u]:
            eta[u] += eta[c]
    return PebbleCensus(tuple(eta), tuple(phi), tuple(int(x >= 1) for x in phi))


def _subtree_totals(tree, counts):
    totals = list(counts)
    for u in tree.postorder:
        for c in tree.children[u]:
            totals[u] += totals[c]
    return totals


def edge_flow_cost(tree, sigma, counts):
    """Sum over tree edges of |pebbles starting below - pebbles ending below|."""
    census = pebble_census(tree, sigma)
    ends = _subtree_totals(tree, counts)
    return sum(abs(census.eta[u] - ends[u]) for u in range(tree.n) if u != tree.root)


def assign_by_transport(tree, sigma, counts):
    """Map pebbles to end slots so no tree edge is crossed in both directions.

    Works bottom-up: every subtree hands its parent either spare pebbles or
    unfilled slots, never both, and the two are matched where they meet.
    """
    if sum(counts) != len(sigma):
        raise InstanceError(f"end counts sum to {sum(counts)}, expected {len(sigma)} pebbles")
    starting = [[] for _ in range(tree.n)]
    for p, v in enumerate(sigma):
        starting[v].append(p)

    mu = [None] * len(sigma)
    spare = [None] * tree.n
    open_slots = [None] * tree.n
    for u in tree.postorder:
        pebbles = list(starting[u])
        slots = [u] * counts[u]
        for c in tree.children[u]:
            pebbles.extend(spare[c])
            slots.extend(open_slots[c])
            spare[c] = open_slots[c] = None
        matched = min(len(pebbles), len(slots))
        for p, target in zip(pebbles[:matched], slots[:matched]):
            mu[p] = target
        spare[u] = pebbles[matched:]
        open_slots[u] = slots[matched:]
    return tuple(mu)


def assign_keeping_residents(sigma, counts):
    """Map pebbles to end slots keeping min(count, phi) pebbles where they start."""
    if sum(counts) != len(sigma):
        raise InstanceError(f"end counts sum to {sum(counts)}, expected {len(sigma)} pebbles")
    mu = [None] * len(sigma)
    kept = [0] * len(counts)
    movers = []
    for p, v in enumerate(sigma):
        if kept[v] < counts[v]:
            mu[p] = v
            kept[v] += 1
        else:
            movers.append(p)
    free = [v for v in range(len(counts)) for _ in range(counts[v] - kept[v])]
    for p, v in zip(movers, free):
        mu[p] = v
    return tuple(mu)


# Con-Sum --------------------------------------------------------------------

def prefix_minima(row):
    """Running minimum of ``row`` and, per position, the last index attaining it.

    Taking the last index hands the subtrees as many pebbles as the minimum
    allows, so the vertex itself keeps the fewest.
    """
    row = np.asarray(row)
    best = np.minimum.accumulate(row)
    positions = np.arange(len(row))
    attains = row == best
    return best, np.maximum.accumulate(np.where(attains, positions, 0))


def con_sum_table(tree, sigma):
    """Con-Sum table rooted at ``tree.root``; row j > 0 keeps the root occupied."""
    k = len(sigma)
    length = k + 1
    census = pebble_census(tree, sigma)
    opt = np.full((tree.n, length), INF, dtype=np.int64)
    choice = [None] * tree.n
    j = np.arange(length)
    for u in tree.postorder:
        fold = _Fold([opt[c] for c in tree.children[u]], length)
        d = fold.row
        best_below, best_below_at = prefix_minima(d)
        children_part = np.empty(length, dtype=np.int64)
        children_part[0] = d[0]
        children_part[1:] = best_below[:-1]
        opt[u] = np.minimum(np.abs(census.eta[u] - j) + children_part, INF)
        choice[u] = (fold, best_below_at)
    return DPTable(tree=tree, opt=opt, choice=choice)


def _con_sum_counts(table):
    tree = table.tree
    counts = [0] * tree.n
    stack = [(tree.root, table.k)]
    while stack:
        u, j = stack.pop()
        if j == 0:
            continue
        fold, best_below_at = table.choice[u]
        below = int(best_below_at[j - 1])
        counts[u] = j - below
        stack.extend(zip(tree.children[u], fold.allocate(below)))
    return counts


# Con-Num --------------------------------------------------------------------

def con_num_table(tree, sigma, residents=None):
    """Con-Num table; non-resident pebbles have no free slot anywhere."""
    k = len(sigma)
    length = k + 1
    census = pebble_census(tree, sigma, residents)
    opt = np.full((tree.n, length), INF, dtype=np.int64)
    choice = [None] * tree.n
    j = np.arange(length)
    for u in tree.postorder:
        fold = _Fold([opt[c] for c in tree.children[u]], length)
        placing = np.maximum(j - census.phi[u], 0).astype(np.int64)
        placing[0] = INF
        row, at_u = _min_plus(placing, fold.row)
        row[0] = 0
        opt[u] = row
        choice[u] = (fold, at_u)
    return DPTable(tree=tree, opt=opt, choice=choice)


def _con_num_counts(table):
    tree = table.tree
    counts = [0] * tree.n
    stack = [(tree.root, table.k)]
    while stack:
        u, j = stack.pop()
        if j == 0:
            continue
        fold, at_u = table.choice[u]
        z = int(at_u[j])
        counts[u] = z
        stack.extend(zip(tree.children[u], fold.allocate(j - z)))
    return counts


# centroid branch search for the Con solvers ----------------------------------

@dataclass
class _Branch:
    graph: object
    to_global: tuple
    starts: list
    residents: list
    paid: int


def _branch_search(branch, measure, best_cost=None):
    """Best (cost, counts, to_global) over this branch and its centroid sub-branches."""
    v = centroid(branch.graph)
    tree = RootedTree.build(branch.graph, v)
    if measure is Measure.SUM:
        table = con_sum_table(tree, branch.starts)
    else:
        table = con_num_table(tree, branch.starts, branch.residents)
    cost = branch.paid + table.root_cost()
    logger.debug("centroid %d of %d-vertex branch: cost %d", branch.to_global[v], tree.n, cost)

    best = None
    if best_cost is None or cost < best_cost:
        counts = _con_sum_counts(table) if measure is Measure.SUM else _con_num_counts(table)
        best = (cost, counts, branch.to_global)
        best_cost = cost
    if best_cost == 0 or branch.graph.n == 1:
        return best

    to_centroid = bfs_distances(branch.graph, v)
    for part, part_to_branch in component_graphs(branch.graph, [v]):
        inside = {b: i for i, b in enumerate(part_to_branch)}
        if not any(s in inside for s in branch.starts):
            continue
        anchor = next(i for i, b in enumerate(part_to_branch) if branch.graph.has_edge(b, v))
        starts, residents, paid, outside = [], [], branch.paid, 0
        for s, r in zip(branch.starts, branch.residents):
            if s in inside:
                starts.append(inside[s])
                residents.append(r)
            else:
                starts.append(anchor)
                residents.append(False)
                paid += to_centroid[s] + 1
                outside += 1
        if measure is Measure.NUM:
            paid = branch.paid
        lower_bound = paid if measure is Measure.SUM else sum(not r for r in residents)
        if lower_bound >= best_cost:
            continue
        sub = _Branch(
            graph=part,
            to_global=tuple(branch.to_global[b] for b in part_to_branch),
            starts=starts,
            residents=residents,
            paid=paid,
        )
        found = _branch_search(sub, measure, best_cost)
        if found is not None and found[0] < best_cost:
            best, best_cost = found, found[0]
            logger.debug("branch at anchor %d wins with cost %d (%d relocated)",
                         sub.to_global[anchor], best_cost, outside)
    return best


def _require_tree(inst):
    if not is_tree(inst.graph):
        raise NotATreeError(
            f"exact solver requires a tree (n={inst.n}, m={inst.graph.edge_count})"
        )


def _solve_con(inst, measure):
    require_goal(inst, GoalKind.CON)
    _require_tree(inst)
    root_branch = _Branch(
        graph=inst.graph,
        to_global=tuple(range(inst.n)),
        starts=list(inst.sigma),
        residents=[True] * inst.k,
        paid=0,
    )
    cost, local_counts, to_global = _branch_search(root_branch, measure)
    counts = [0] * inst.n
    for local, c in enumerate(local_counts):
        counts[to_global[local]] = c
    if measure is Measure.SUM:
        mu = assign_by_transport(RootedTree.build(inst.graph, 0), inst.sigma, counts)
    else:
        mu = assign_keeping_residents(inst.sigma, counts)
    report = make_report(inst, mu, measure, Guarantee.exact(), f"con-{measure.value}-tree-dp")
    if report.cost != cost:
        logger.warning("con-%s: table cost %d, reconstructed cost %d", measure.value, cost, report.cost)
    return report


def solve_con_sum_tree(inst):
    return _solve_con(inst, Measure.SUM)


def solve_con_num_tree(inst):
    return _solve_con(inst, Measure.NUM)


# Ind-Sum / Ind-Num ----------------------------------------------------------

def ind_tables(tree, sigma, measure):
    """Ind tables: opt_plus keeps u occupied, opt_minus leaves it empty."""
    k = len(sigma)
    length = k + 1
    census = pebble_census(tree, sigma)
    shape = (tree.n, length)
    opt = np.full(shape, INF, dtype=np.int64)
    plus = np.full(shape, INF, dtype=np.int64)
    minus = np.full(shape, INF, dtype=np.int64)
    choice = [None] * tree.n
    j = np.arange(length)
    for u in tree.postorder:
        children = tree.children[u]
        any_fold = _Fold([opt[c] for c in children], length)
        empty_fold = _Fold([minus[c] for c in children], length)
        if measure is Measure.SUM:
            moved = np.abs(census.eta[u] - j)
            minus[u] = np.minimum(moved + any_fold.row, INF)
            plus[u, 1:] = np.minimum(moved[1:] + empty_fold.row[:-1], INF)
        else:
            minus[u] = any_fold.row
            plus[u, 1:] = np.minimum((1 - census.gamma[u]) + empty_fold.row[:-1], INF)
        opt[u] = np.minimum(plus[u], minus[u])
        choice[u] = (any_fold, empty_fold)
    return DPTable(tree=tree, opt=opt, opt_plus=plus, opt_minus=minus, choice=choice)


def _ind_counts(table):
    tree = table.tree
    counts = [0] * tree.n
    stack = [(tree.root, table.k, None)]
    while stack:
        u, j, occupied = stack.pop()
        if occupied is None:
            occupied = j > 0 and table.opt_plus[u, j] <= table.opt_minus[u, j]
        any_fold, empty_fold = table.choice[u]
        if occupied:
            counts[u] = 1
            stack.extend((c, jc, False) for c, jc in zip(tree.children[u], empty_fold.allocate(j - 1)))
        else:
            stack.extend((c, jc, None) for c, jc in zip(tree.children[u], any_fold.allocate(j)))
    return counts


def _solve_ind(inst, measure):
    require_goal(inst, GoalKind.IND)
    _require_tree(inst)
    method = f"ind-{measure.value}-tree-dp"
    if inst.k > inst.n:
        return Infeasible(measure, method, f"{inst.k} pebbles cannot be independent on {inst.n} vertices")
    tree = RootedTree.build(inst.graph, 0)
    table = ind_tables(tree, inst.sigma, measure)
    cost = table.root_cost()
    if cost >= INF:
        return Infeasible(measure, method, f"the tree has no independent set of size {inst.k}")
    counts = _ind_counts(table)
    if measure is Measure.SUM:
        mu = assign_by_transport(tree, inst.sigma, counts)
    else:
        mu = assign_keeping_residents(inst.sigma, counts)
    report = make_report(inst, mu, measure, Guarantee.exact(), method)
    if report.cost != cost:
        logger.warning("%s: table cost %d, reconstructed cost %d", method, cost, report.cost)
    return report


def solve_ind_sum_tree(inst):
    return _solve_ind(inst, Measure.SUM)


def solve_ind_num_tree(inst):
    return _solve_ind(inst, Measure.NUM)
