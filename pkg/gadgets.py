#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Generators for the hardness reductions, used as test and benchmark instances.

A 3-CNF formula becomes an Ind instance (variable and clause stars) or an
s-t-Cut instance (short variable/clause paths joined by long paths). The
vertex-cover and dominating-clique reductions give Clique instances whose
optimum is known from a small brute force. Each generated instance carries
its vertex labels and the cost thresholds that mirror satisfiability.
"""

import itertools
import logging
from dataclasses import dataclass, field

import networkx as nx
from pysat.formula import CNF
from pysat.solvers import Glucose3

from errors import CnfError, GuardExceededError, InstanceError
from graph_core import Graph
from instance_model import Goal, Instance, Measure

logger = logging.getLogger(__name__)

SAT_BRUTEFORCE_LIMIT = 20


@dataclass(frozen=True)
class Cnf3:
    variable_count: int
    clauses: tuple

    def __post_init__(self):
        if self.variable_count < 1:
            raise CnfError(f"formula needs at least one variable, got {self.variable_count}")
        clauses = tuple(tuple(int(lit) for lit in clause) for clause in self.clauses)
        if not clauses:
            raise CnfError("formula needs at least one clause")
        for j, clause in enumerate(clauses, 1):
            if len(clause) != 3:
                raise CnfError(f"clause {j} has {len(clause)} literals, expected 3")
            for lit in clause:
                if lit == 0 or abs(lit) > self.variable_count:
                    raise CnfError(f"clause {j}: literal {lit} outside 1..{self.variable_count}")
        object.__setattr__(self, "clauses", clauses)

    @property
    def clause_count(self):
        return len(self.clauses)

    def satisfied_by(self, assignment):
        """``assignment[i]`` is the truth value of variable i+1."""
        return all(
            any(assignment[abs(lit) - 1] == (lit > 0) for lit in clause)
            for clause in self.clauses
        )


@dataclass(frozen=True)
class GadgetInstance:
    instance: Instance
    label_map: tuple
    threshold: dict = field(default_factory=dict)

    def vertex(self, label):
        return self.label_map.index(label)


class _GraphBuilder:
    def __init__(self):
        self.labels = []
        self.edges = []

    def add(self, label):
        self.labels.append(label)
        return len(self.labels) - 1

    def connect(self, u, v):
        self.edges.append((u, v))

    def long_path(self, a, b, length, tag):
        """Path of ``length`` edges from a to b through fresh internal vertices."""
        previous = a
        for step in range(1, length):
            inner = self.add(f"{tag}#{step}")
            self.connect(previous, inner)
            previous = inner
        self.connect(previous, b)

    def graph(self):
        return Graph(len(self.labels), self.edges)


def _literal_name(lit):
    return f"x{lit}" if lit > 0 else f"~x{-lit}"


def gen_ind_gadget(f):
    """Ind instance whose optimum is Max <= 1 and Sum <= tau+m exactly when f is satisfiable."""
    incidence = nx.Graph()
    incidence.add_nodes_from(("var", i) for i in range(1, f.variable_count + 1))
    incidence.add_nodes_from(("clause", j) for j in range(f.clause_count))
    for j, clause in enumerate(f.clauses):
        incidence.add_edges_from((("var", abs(lit)), ("clause", j)) for lit in clause)
    if not nx.is_connected(incidence):
        raise CnfError("Ind gadget needs every variable used and a connected variable-clause incidence")

    b = _GraphBuilder()
    x, x_bar = {}, {}
    sigma = []
    for i in range(1, f.variable_count + 1):
        v = b.add(f"v{i}")
        u = b.add(f"u{i}")
        x[i] = b.add(f"x{i}")
        x_bar[i] = b.add(f"~x{i}")
        for leaf in (u, x[i], x_bar[i]):
            b.connect(v, leaf)
        sigma.extend((u, v))
    for j, clause in enumerate(f.clauses, 1):
        z = b.add(f"z{j}")
        w = b.add(f"w{j}")
        b.connect(z, w)
        for i, lit in enumerate(clause, 1):
            ell = b.add(f"l{j}.{i}")
            b.connect(z, ell)
            # asserted literals attach to the negated variable leaf and vice versa
            b.connect(ell, x_bar[lit] if lit > 0 else x[-lit])
        sigma.extend((w, z))

    inst = Instance(b.graph(), tuple(sigma), Goal.ind())
    bound = f.variable_count + f.clause_count
    logger.debug("ind gadget: n=%d k=%d", inst.n, inst.k)
    return GadgetInstance(inst, tuple(b.labels), {Measure.MAX: 1, Measure.SUM: bound})


def gen_stcut_gadget(f, h=None):
    """s-t-Cut instance whose optimum is Max <= 1 (and Sum <= k) exactly when f is satisfiable."""
    k = f.variable_count + 2 * f.clause_count
    if h is None:
        h = k + 1
    if h <= k:
        raise InstanceError(f"long paths need length h > k = {k}, got h={h}")

    b = _GraphBuilder()
    s = b.add("s")
    t = b.add("t")
    x, x_bar = {}, {}
    sigma = []
    for i in range(1, f.variable_count + 1):
        x[i] = b.add(f"x{i}")
        u = b.add(f"u{i}")
        x_bar[i] = b.add(f"~x{i}")
        b.connect(x[i], u)
        b.connect(u, x_bar[i])
        sigma.append(u)
    literal_vertices = []
    for j, clause in enumerate(f.clauses, 1):
        ells = [b.add(f"l{j}.{i}") for i in (1, 2, 3)]
        v = b.add(f"v{j}")
        v_prime = b.add(f"v'{j}")
        for a, c in zip((ells[0], v, ells[1], v_prime), (v, ells[1], v_prime, ells[2])):
            b.connect(a, c)
        sigma.extend((v, v_prime))
        for i, (ell, lit) in enumerate(zip(ells, clause), 1):
            target = x[lit] if lit > 0 else x_bar[-lit]
            b.long_path(ell, target, h, f"l{j}.{i}-{_literal_name(lit)}")
            literal_vertices.append((ell, f"l{j}.{i}"))
    for i in range(1, f.variable_count + 1):
        b.long_path(s, x[i], h, f"s-x{i}")
        b.long_path(s, x_bar[i], h, f"s-~x{i}")
    for ell, name in literal_vertices:
        b.long_path(t, ell, h, f"t-{name}")

    inst = Instance(b.graph(), tuple(sigma), Goal.stcut(s, t))
    logger.debug("stcut gadget: n=%d k=%d h=%d", inst.n, inst.k, h)
    return GadgetInstance(inst, tuple(b.labels), {Measure.MAX: 1, Measure.SUM: k})


def _relabelled(h_graph):
    view = h_graph.nx_view() if isinstance(h_graph, Graph) else h_graph
    nodes = sorted(view.nodes)
    if not nodes:
        raise InstanceError("graph must have at least one vertex")
    index = {v: i for i, v in enumerate(nodes)}
    return nodes, nx.relabel_nodes(view, index, copy=True)


def gen_clique_num_from_vc(h_graph):
    """Complement of h plus an isolated vertex; Clique-Num optimum = minimum vertex cover of h."""
    nodes, h = _relabelled(h_graph)
    u = len(nodes)
    h.add_node(u)
    g = nx.complement(h)
    inst = Instance(Graph(u + 1, g.edges), tuple(range(u)), Goal.clique())
    labels = tuple(f"h{v}" for v in nodes) + ("u",)
    return GadgetInstance(inst, labels)


def gen_clique_sum_from_vc(h_graph):
    """Complement of h plus a universal vertex v0; Clique-Sum optimum = minimum vertex cover of h."""
    nodes, h = _relabelled(h_graph)
    g = nx.complement(h)
    v0 = len(nodes)
    g.add_edges_from((v0, v) for v in range(v0))
    inst = Instance(Graph(v0 + 1, g.edges), tuple(range(v0)), Goal.clique())
    labels = tuple(f"h{v}" for v in nodes) + ("v0",)
    return GadgetInstance(inst, labels)


def gen_clique_max_from_domclique(h_graph):
    """G = h with a pebble per vertex; Clique-Max optimum <= 1 iff h has a dominating clique."""
    nodes, h = _relabelled(h_graph)
    inst = Instance(Graph(len(nodes), h.edges), tuple(range(len(nodes))), Goal.clique())
    return GadgetInstance(inst, tuple(f"h{v}" for v in nodes), {Measure.MAX: 1})


def sat_bruteforce(f):
    """Satisfiability by scanning all 2^tau assignments."""
    if f.variable_count > SAT_BRUTEFORCE_LIMIT:
        raise GuardExceededError("assignment scan", 2 ** f.variable_count, 2 ** SAT_BRUTEFORCE_LIMIT)
    return any(
        f.satisfied_by(assignment)
        for assignment in itertools.product((False, True), repeat=f.variable_count)
    )


def sat_solver_check(f):
    """Satisfiability through a CDCL solver, for formulas past the brute-force guard."""
    with Glucose3(bootstrap_with=[list(c) for c in f.clauses]) as solver:
        return solver.solve()


def is_satisfiable(f):
    """Brute force up to SAT_BRUTEFORCE_LIMIT variables, the CDCL solver beyond."""
    if f.variable_count > SAT_BRUTEFORCE_LIMIT:
        logger.debug("sat: %d variables, using solver", f.variable_count)
        return sat_solver_check(f)
    return sat_bruteforce(f)


def read_dimacs(text):
    """Parse DIMACS CNF text (``p cnf tau m`` header, 0-terminated clauses)."""
    header = None
    for number, line in enumerate(text.splitlines(), 1):
        parts = line.split()
        if parts and parts[0] == "p":
            if len(parts) != 4 or parts[1] != "cnf":
                raise CnfError(f"line {number}: malformed header {line.strip()!r}")
            try:
                header = (int(parts[2]), int(parts[3]))
            except ValueError:
                raise CnfError(f"line {number}: malformed header {line.strip()!r}") from None
            break
    if header is None:
        raise CnfError("missing 'p cnf' header")

    try:
        clauses = CNF(from_string=text).clauses
    except Exception as exc:
        raise CnfError(f"cannot parse clauses: {exc}") from exc
    variable_count, clause_count = header
    if len(clauses) != clause_count:
        raise CnfError(f"header announces {clause_count} clauses, found {len(clauses)}")
    return Cnf3(variable_count, tuple(tuple(c) for c in clauses))


def format_dimacs(f):
    lines = [f"p cnf {f.variable_count} {f.clause_count}"]
    lines.extend(" ".join(str(lit) for lit in clause) + " 0" for clause in f.clauses)
    return "\n".join(lines) + "\n"
