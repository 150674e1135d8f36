#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Pebble-motion instances, goal predicates, cost measures and solver reports.

An instance is a connected graph, k pebbles with start vertices sigma, and a
goal predicate on the set of end vertices. A solution maps every pebble to an
end vertex mu; its cost is the Sum, Max or Num of the pebble movements.
"""

import enum
from dataclasses import dataclass, field
from fractions import Fraction

import networkx as nx

from errors import GoalMismatchError, InstanceError
from graph_core import Graph, bfs_distances, is_connected_subset


class Measure(enum.Enum):
    SUM = "sum"
    MAX = "max"
    NUM = "num"


class GoalKind(enum.Enum):
    CON = "con"
    IND = "ind"
    CLIQUE = "clique"
    STCUT = "stcut"


@dataclass(frozen=True)
class Goal:
    kind: GoalKind
    s: int = None
    t: int = None

    def __post_init__(self):
        if self.kind is GoalKind.STCUT:
            if self.s is None or self.t is None:
                raise InstanceError("stcut goal needs both s and t")
            if self.s == self.t:
                raise InstanceError(f"stcut goal needs s != t, got s = t = {self.s}")
        elif self.s is not None or self.t is not None:
            raise InstanceError(f"goal {self.kind.value} takes no s/t parameters")

    @classmethod
    def con(cls):
        return cls(GoalKind.CON)

    @classmethod
    def ind(cls):
        return cls(GoalKind.IND)

    @classmethod
    def clique(cls):
        return cls(GoalKind.CLIQUE)

    @classmethod
    def stcut(cls, s, t):
        return cls(GoalKind.STCUT, int(s), int(t))

    def __str__(self):
        if self.kind is GoalKind.STCUT:
            return f"stcut {self.s} {self.t}"
        return self.kind.value


@dataclass(frozen=True)
class Instance:
    graph: Graph
    sigma: tuple
    goal: Goal

    def __post_init__(self):
        object.__setattr__(self, "sigma", tuple(int(v) for v in self.sigma))
        if not self.sigma:
            raise InstanceError("instance needs at least one pebble")
        n = self.graph.n
        for p, v in enumerate(self.sigma):
            if not (0 <= v < n):
                raise InstanceError(f"pebble {p} starts on vertex {v}, out of range for n={n}")
        if self.goal.kind is GoalKind.STCUT:
            for name, v in (("s", self.goal.s), ("t", self.goal.t)):
                if not (0 <= v < n):
                    raise InstanceError(f"{name}={v} out of range for n={n}")

    @property
    def k(self):
        return len(self.sigma)

    @property
    def n(self):
        return self.graph.n


@dataclass(frozen=True)
class Solution:
    mu: tuple

    def __post_init__(self):
        object.__setattr__(self, "mu", tuple(int(v) for v in self.mu))

    def __len__(self):
        return len(self.mu)


class GuaranteeKind(enum.Enum):
    EXACT = "exact"
    ADDITIVE_PLUS_ONE = "additive+1"
    FACTOR = "factor"
    HEURISTIC = "heuristic"


@dataclass(frozen=True)
class Guarantee:
    kind: GuaranteeKind
    factor: Fraction = None

    @classmethod
    def exact(cls):
        return cls(GuaranteeKind.EXACT)

    @classmethod
    def additive_plus_one(cls):
        return cls(GuaranteeKind.ADDITIVE_PLUS_ONE)

    @classmethod
    def ratio(cls, rho):
        return cls(GuaranteeKind.FACTOR, Fraction(rho))

    @classmethod
    def heuristic(cls):
        return cls(GuaranteeKind.HEURISTIC)

    def allows(self, cost, optimum):
        """Whether ``cost`` is within this guarantee of ``optimum``."""
        if self.kind is GuaranteeKind.EXACT:
            return cost == optimum
        if self.kind is GuaranteeKind.ADDITIVE_PLUS_ONE:
            return optimum <= cost <= optimum + 1
        if self.kind is GuaranteeKind.FACTOR:
            return optimum <= cost <= self.factor * optimum
        return cost >= optimum

    def __str__(self):
        if self.kind is GuaranteeKind.FACTOR:
            return f"factor({self.factor})"
        return self.kind.value


@dataclass(frozen=True)
class SolveReport:
    solution: Solution
    cost: int
    measure: Measure
    guarantee: Guarantee
    method: str
    feasible: bool = field(default=True, init=False)

    def to_json(self):
        return {
            "cost": self.cost,
            "measure": self.measure.value,
            "method": self.method,
            "guarantee": str(self.guarantee),
            "mu": list(self.solution.mu),
        }


@dataclass(frozen=True)
class Infeasible:
    measure: Measure
    method: str
    reason: str
    feasible: bool = field(default=False, init=False)

    def to_json(self):
        return {
            "infeasible": True,
            "measure": self.measure.value,
            "method": self.method,
            "reason": self.reason,
        }


def phi(inst):
    """Number of pebbles starting on each vertex."""
    counts = [0] * inst.n
    for v in inst.sigma:
        counts[v] += 1
    return counts


def require_goal(inst, *kinds):
    if inst.goal.kind not in kinds:
        wanted = "/".join(k.value for k in kinds)
        raise GoalMismatchError(f"solver expects goal {wanted}, instance has {inst.goal.kind.value}")


def _is_independent(g, u_set):
    members = sorted(u_set)
    return not any(g.has_edge(u, v) for i, u in enumerate(members) for v in members[i + 1:])


def _is_clique(g, u_set):
    members = sorted(u_set)
    return all(g.has_edge(u, v) for i, u in enumerate(members) for v in members[i + 1:])


def predicate_holds(inst, u_set):
    """Evaluate the instance's goal predicate on a set of end vertices."""
    u_set = frozenset(u_set)
    g = inst.graph
    kind = inst.goal.kind
    if kind is GoalKind.CON:
        return is_connected_subset(g, u_set)
    if kind is GoalKind.IND:
        return len(u_set) == inst.k and _is_independent(g, u_set)
    if kind is GoalKind.CLIQUE:
        return bool(u_set) and _is_clique(g, u_set)
    s, t = inst.goal.s, inst.goal.t
    if s in u_set or t in u_set:
        return False
    rest = g.nx_view().subgraph(v for v in range(g.n) if v not in u_set)
    return not nx.has_path(rest, s, t)


def solution_cost(inst, sol, measure):
    mu = sol.mu if isinstance(sol, Solution) else tuple(sol)
    if len(mu) != inst.k:
        raise InstanceError(f"solution has {len(mu)} end vertices, instance has {inst.k} pebbles")
    if measure is Measure.NUM:
        return sum(1 for a, b in zip(inst.sigma, mu) if a != b)
    moves = [bfs_distances(inst.graph, a)[b] for a, b in zip(inst.sigma, mu)]
    if measure is Measure.SUM:
        return sum(moves)
    return max(moves)


def validate(inst, sol):
    """True iff the end vertices satisfy the goal (and are distinct for Ind)."""
    mu = sol.mu if isinstance(sol, Solution) else tuple(sol)
    if len(mu) != inst.k:
        return False
    if any(not (0 <= v < inst.n) for v in mu):
        return False
    if inst.goal.kind is GoalKind.IND and len(set(mu)) != inst.k:
        return False
    return predicate_holds(inst, mu)


def make_report(inst, mu, measure, guarantee, method):
    """Build a SolveReport whose cost is recomputed from the solution."""
    solution = mu if isinstance(mu, Solution) else Solution(tuple(mu))
    if not validate(inst, solution):
        raise InstanceError(f"{method} produced an end configuration that violates the goal")
    cost = solution_cost(inst, solution, measure)
    return SolveReport(solution, cost, measure, guarantee, method)


def check_report(inst, report):
    if not report.feasible:
        return True
    return validate(inst, report.solution) and \
        solution_cost(inst, report.solution, report.measure) == report.cost
