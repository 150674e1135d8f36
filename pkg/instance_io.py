#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Text formats for instances, solutions and graph fragments.

Instance file::

    pebblemotion v1
    graph 4
    e 0 1
    e 1 2
    p 1
    p 2
    goal con

Solution file: one ``mu <pebble> <vertex>`` line per pebble. Blank lines and
lines starting with ``#`` are ignored on input and never written.
"""

import networkx as nx

from errors import InstanceError, ParseError
from graph_core import Graph
from instance_model import Goal, GoalKind, Instance, Solution

HEADER = "pebblemotion v1"


def _lines(text):
    for number, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if line and not line.startswith("#"):
            yield number, line.split()


def _ints(parts, count, number, what):
    if len(parts) != count:
        raise ParseError(f"{what} line needs {count} integer field(s), got {len(parts)}", number)
    try:
        return [int(x) for x in parts]
    except ValueError:
        raise ParseError(f"{what} line has a non-integer field: {' '.join(parts)}", number) from None


def _read_graph_lines(text, allow_other):
    """Shared reader: returns (n, edges, leftover lines) after checking header and edges."""
    lines = iter(_lines(text))
    first = next(lines, None)
    if first is None or " ".join(first[1]) != HEADER:
        raise ParseError(f"first line must be {HEADER!r}", first[0] if first else 1)

    n = None
    edges = []
    seen = set()
    other = []
    for number, parts in lines:
        key = parts[0]
        if key == "graph":
            if n is not None:
                raise ParseError("duplicate 'graph' line", number)
            (n,) = _ints(parts[1:], 1, number, "graph")
            if n < 1:
                raise ParseError(f"graph needs at least one vertex, got {n}", number)
        elif key == "e":
            if n is None:
                raise ParseError("edge before 'graph' line", number)
            u, v = _ints(parts[1:], 2, number, "edge")
            if not (0 <= u < n and 0 <= v < n):
                raise ParseError(f"edge ({u}, {v}) out of range for n={n}", number)
            if u == v:
                raise ParseError(f"self-loop on vertex {u}", number)
            edge = (min(u, v), max(u, v))
            if edge in seen:
                raise ParseError(f"duplicate edge ({edge[0]}, {edge[1]})", number)
            seen.add(edge)
            edges.append(edge)
        elif allow_other:
            other.append((number, parts))
        else:
            raise ParseError(f"unexpected line starting with {key!r}", number)
    if n is None:
        raise ParseError("missing 'graph' line")
    return n, edges, other


def parse_instance(text):
    n, edges, other = _read_graph_lines(text, allow_other=True)
    sigma = []
    goal = None
    for number, parts in other:
        key = parts[0]
        if key == "p":
            (v,) = _ints(parts[1:], 1, number, "pebble")
            if not (0 <= v < n):
                raise ParseError(f"pebble on vertex {v}, out of range for n={n}", number)
            sigma.append(v)
        elif key == "goal":
            if goal is not None:
                raise ParseError("duplicate 'goal' line", number)
            goal = _parse_goal(parts[1:], n, number)
        else:
            raise ParseError(f"unexpected line starting with {key!r}", number)
    if goal is None:
        raise ParseError("missing 'goal' line")
    if not sigma:
        raise ParseError("instance has no pebbles")
    try:
        graph = Graph(n, edges)
        return Instance(graph, tuple(sigma), goal)
    except InstanceError as exc:
        raise ParseError(str(exc)) from exc


def _parse_goal(parts, n, number):
    if not parts:
        raise ParseError("goal line needs a kind", number)
    try:
        kind = GoalKind(parts[0])
    except ValueError:
        raise ParseError(f"unknown goal {parts[0]!r} (expected con, ind, clique or stcut)", number) from None
    if kind is GoalKind.STCUT:
        s, t = _ints(parts[1:], 2, number, "goal stcut")
        for name, v in (("s", s), ("t", t)):
            if not (0 <= v < n):
                raise ParseError(f"{name}={v} out of range for n={n}", number)
        if s == t:
            raise ParseError("stcut goal needs s != t", number)
        return Goal.stcut(s, t)
    if len(parts) != 1:
        raise ParseError(f"goal {kind.value} takes no parameters", number)
    return Goal(kind)


def format_instance(inst):
    lines = [HEADER, f"graph {inst.n}"]
    lines.extend(f"e {u} {v}" for u, v in sorted(inst.graph.edges))
    lines.extend(f"p {v}" for v in inst.sigma)
    lines.append(f"goal {inst.goal}")
    return "\n".join(lines) + "\n"


def parse_solution(text, k):
    mu = [None] * k
    for number, parts in _lines(text):
        if parts[0] != "mu":
            raise ParseError(f"expected 'mu <pebble> <vertex>', got {parts[0]!r}", number)
        p, v = _ints(parts[1:], 2, number, "mu")
        if not (0 <= p < k):
            raise ParseError(f"pebble {p} out of range for k={k}", number)
        if mu[p] is not None:
            raise ParseError(f"pebble {p} assigned twice", number)
        mu[p] = v
    missing = [p for p, v in enumerate(mu) if v is None]
    if missing:
        raise ParseError(f"no end vertex for pebble(s) {missing}")
    return Solution(tuple(mu))


def format_solution(sol):
    mu = sol.mu if isinstance(sol, Solution) else tuple(sol)
    return "".join(f"mu {p} {v}\n" for p, v in enumerate(mu))


def parse_graph_fragment(text):
    """A possibly disconnected graph in the instance header format (no pebbles or goal)."""
    n, edges, _ = _read_graph_lines(text, allow_other=False)
    g = nx.Graph()
    g.add_nodes_from(range(n))
    g.add_edges_from(edges)
    return g


def format_graph_fragment(g):
    nodes = sorted(g.nodes)
    index = {v: i for i, v in enumerate(nodes)}
    edges = sorted((min(index[u], index[v]), max(index[u], index[v])) for u, v in g.edges)
    lines = [HEADER, f"graph {len(nodes)}"]
    lines.extend(f"e {u} {v}" for u, v in edges)
    return "\n".join(lines) + "\n"
