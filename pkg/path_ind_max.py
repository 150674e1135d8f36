#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Exact Ind-Max on paths.

Vertices are identified by their distance from one endpoint. For a fixed
movement bound z a left-to-right greedy places each pebble (in start order)
on the leftmost position that is two past the previous one and within z of
its start; the optimum is the smallest z for which the greedy succeeds.
"""

import bisect
import logging
from dataclasses import dataclass

from errors import InstanceError
from graph_core import is_path, path_order
from instance_model import (
    GoalKind,
    Guarantee,
    Infeasible,
    Measure,
    SolveReport,
    Solution,
    make_report,
    require_goal,
)

logger = logging.getLogger(__name__)

METHOD = "ind-max-path-greedy"


@dataclass(frozen=True)
class PathInstance:
    n: int
    pebbles: tuple

    def __post_init__(self):
        if self.n < 1:
            raise InstanceError(f"path needs at least one vertex, got n={self.n}")
        positions = tuple(sorted(int(p) for p in self.pebbles))
        if not positions:
            raise InstanceError("path instance needs at least one pebble")
        if positions[0] < 0 or positions[-1] >= self.n:
            raise InstanceError(f"pebble positions must lie in 0..{self.n - 1}")
        object.__setattr__(self, "pebbles", positions)

    @property
    def k(self):
        return len(self.pebbles)


def greedy_feasible(pi, z):
    """End positions with gaps >= 2 and moves <= z, or None if the greedy gets stuck."""
    if z < 0:
        raise InstanceError(f"movement bound must be non-negative, got {z}")
    n = pi.n
    placed = []
    nxt = 0
    for start in pi.pebbles:
        h = max(nxt, start - z)
        if h >= n or h > start + z:
            return None
        placed.append(h)
        nxt = h + 2
    return Solution(tuple(placed))


def solve_ind_max_path(pi):
    """Smallest z for which the greedy succeeds, found by binary search on [0, n-1]."""
    if pi.k > (pi.n + 1) // 2:
        return Infeasible(Measure.MAX, METHOD,
                          f"{pi.k} pebbles exceed the {(pi.n + 1) // 2} independent slots of a {pi.n}-path")
    z = bisect.bisect_left(range(pi.n), True, key=lambda bound: greedy_feasible(pi, bound) is not None)
    solution = greedy_feasible(pi, z)
    logger.debug("path ind-max: n=%d k=%d optimum z=%d", pi.n, pi.k, z)
    cost = max(abs(a - b) for a, b in zip(pi.pebbles, solution.mu))
    return SolveReport(solution, cost, Measure.MAX, Guarantee.exact(), METHOD)


def path_instance_from(inst):
    """PathInstance for an Ind instance on a path, plus vertex order and pebble order."""
    require_goal(inst, GoalKind.IND)
    if not is_path(inst.graph):
        raise InstanceError("path solver requires a path graph")
    order = path_order(inst.graph)
    position = {v: i for i, v in enumerate(order)}
    pebble_order = sorted(range(inst.k), key=lambda p: (position[inst.sigma[p]], p))
    pi = PathInstance(inst.n, tuple(position[inst.sigma[p]] for p in pebble_order))
    return pi, order, pebble_order


def solve_ind_max_on_path(inst):
    pi, order, pebble_order = path_instance_from(inst)
    result = solve_ind_max_path(pi)
    if not result.feasible:
        return result
    mu = [None] * inst.k
    for p, end in zip(pebble_order, result.solution.mu):
        mu[p] = order[end]
    return make_report(inst, mu, Measure.MAX, Guarantee.exact(), METHOD)
