#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Classical subroutines behind the approximation algorithms: bipartite
matching, König independent sets, vertex cover, maximum-weight clique and
minimum s-t vertex cut.

Graph arguments may be a connected ``Graph`` or a plain ``networkx.Graph``
fragment (complements and induced subgraphs need not be connected).
"""

import logging
from dataclasses import dataclass

import networkx as nx
import numpy as np
from networkx.algorithms.flow import edmonds_karp
from scipy.sparse import csr_matrix
from scipy.sparse.csgraph import maximum_bipartite_matching

from config import MIS_LIMIT_ENV, env_limit
from errors import GuardExceededError, InstanceError, NoCutError
from graph_core import Graph, two_coloring

logger = logging.getLogger(__name__)


def _as_nx(g):
    return g.nx_view() if isinstance(g, Graph) else g


@dataclass(frozen=True)
class BipartiteGraph:
    left_count: int
    right_count: int
    edges: tuple

    def __post_init__(self):
        pairs = tuple((int(a), int(b)) for a, b in self.edges)
        for a, b in pairs:
            if not (0 <= a < self.left_count and 0 <= b < self.right_count):
                raise InstanceError(f"bipartite edge ({a}, {b}) out of range")
        if len(set(pairs)) != len(pairs):
            raise InstanceError("bipartite graph has duplicate edges")
        object.__setattr__(self, "edges", pairs)


@dataclass(frozen=True)
class Matching:
    pairs: frozenset

    def __len__(self):
        return len(self.pairs)

    def partner_of_left(self):
        return {a: b for a, b in self.pairs}


def max_bipartite_matching(h):
    """Maximum-cardinality matching (scipy Hopcroft-Karp on a sparse biadjacency)."""
    if h.left_count == 0 or h.right_count == 0 or not h.edges:
        return Matching(frozenset())
    rows = np.fromiter((a for a, _ in h.edges), dtype=np.int32, count=len(h.edges))
    cols = np.fromiter((b for _, b in h.edges), dtype=np.int32, count=len(h.edges))
    data = np.ones(len(h.edges), dtype=np.int8)
    biadjacency = csr_matrix((data, (rows, cols)), shape=(h.left_count, h.right_count))
    column_of_row = maximum_bipartite_matching(biadjacency, perm_type="column")
    pairs = frozenset((a, int(b)) for a, b in enumerate(column_of_row) if b >= 0)
    return Matching(pairs)


def bipartition(g):
    """Colour classes of a bipartite graph; raises on an odd cycle."""
    sides = two_coloring(_as_nx(g))
    if sides is None:
        raise InstanceError("graph is not bipartite")
    return sides


def max_independent_set_bipartite(g, sides):
    """Maximum independent set via König: complement of a minimum vertex cover."""
    view = _as_nx(g)
    left, right = frozenset(sides[0]), frozenset(sides[1])
    nodes = frozenset(view.nodes)
    if left & right or (left | right) != nodes:
        raise InstanceError("bipartition must split the vertex set into two disjoint sides")
    for u, v in view.edges:
        if (u in left) == (v in left):
            raise InstanceError(f"edge ({u}, {v}) lies inside one side of the bipartition")

    matching = nx.bipartite.hopcroft_karp_matching(view, top_nodes=left)
    cover = nx.bipartite.to_vertex_cover(view, matching, top_nodes=left)
    independent = nodes - frozenset(cover)
    logger.debug("König: n=%d matching=%d independent=%d", len(nodes), len(matching) // 2, len(independent))
    return independent


def max_independent_set(g):
    """Exact maximum independent set: König when bipartite, else a guarded exact search."""
    view = _as_nx(g)
    sides = two_coloring(view)
    if sides is not None:
        return max_independent_set_bipartite(view, sides)
    limit = env_limit(MIS_LIMIT_ENV)
    if view.number_of_nodes() > limit:
        raise GuardExceededError("maximum independent set on a non-bipartite graph",
                                 view.number_of_nodes(), limit, MIS_LIMIT_ENV)
    clique, _ = nx.max_weight_clique(nx.complement(view), weight=None)
    return frozenset(clique)


def vertex_cover_2approx(g):
    """Endpoints of a maximal matching: a cover at most twice the minimum."""
    view = _as_nx(g)
    cover = set()
    for u, v in nx.maximal_matching(view):
        cover.update((u, v))
    return frozenset(cover)


def max_weight_clique(g, weights):
    """Clique of maximum total weight; vertices of weight 0 are never included."""
    view = _as_nx(g)
    weight_of = weights if isinstance(weights, dict) else dict(enumerate(weights))
    for v in view.nodes:
        w = weight_of.get(v, 0)
        if int(w) != w or w < 0:
            raise InstanceError(f"clique weight of vertex {v} must be a non-negative integer, got {w}")

    positive = [v for v in view.nodes if weight_of.get(v, 0) > 0]
    if not positive:
        return frozenset()
    weighted = nx.Graph(view.subgraph(positive))
    nx.set_node_attributes(weighted, {v: int(weight_of[v]) for v in positive}, "weight")
    clique, total = nx.max_weight_clique(weighted, weight="weight")
    logger.debug("max weight clique: %d of %d weighted vertices, weight %d", len(clique), len(positive), total)
    return frozenset(clique)


def min_st_vertex_cut(g, s, t):
    """Minimum vertex set (excluding s and t) separating s from t."""
    view = _as_nx(g)
    if s == t:
        raise InstanceError("s and t must differ")
    for name, v in (("s", s), ("t", t)):
        if v not in view:
            raise InstanceError(f"{name}={v} is not a vertex of the graph")
    if view.has_edge(s, t):
        raise NoCutError(f"s={s} and t={t} are adjacent; no vertex set separates them")
    if not nx.has_path(view, s, t):
        return frozenset()
    cut = nx.minimum_node_cut(view, s, t, flow_func=edmonds_karp)
    return frozenset(cut)
