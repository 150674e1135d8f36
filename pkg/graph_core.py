#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""
Graph services shared by every solver: connected simple graphs on dense ids,
BFS distances, induced connectivity, rooted trees and centroids.
"""

import logging
import threading
from dataclasses import dataclass

import networkx as nx

from errors import InstanceError, NotATreeError

logger = logging.getLogger(__name__)


class Graph:
    """Connected, loop-free, undirected graph on vertices 0..n-1.

    Immutable after construction. The per-source distance cache is guarded by
    a lock so one Graph can be shared between worker threads.
    """

    def __init__(self, vertex_count, edges=()):
        vertex_count = int(vertex_count)
        if vertex_count < 1:
            raise InstanceError(f"graph needs at least one vertex, got n={vertex_count}")

        g = nx.Graph()
        g.add_nodes_from(range(vertex_count))
        seen = set()
        for u, v in edges:
            u, v = int(u), int(v)
            if not (0 <= u < vertex_count and 0 <= v < vertex_count):
                raise InstanceError(f"edge ({u}, {v}) out of range for n={vertex_count}")
            if u == v:
                raise InstanceError(f"self-loop on vertex {u}")
            key = (min(u, v), max(u, v))
            if key in seen:
                raise InstanceError(f"duplicate edge ({key[0]}, {key[1]})")
            seen.add(key)
            g.add_edge(u, v)

        if not nx.is_connected(g):
            raise InstanceError("graph is not connected")

        self.vertex_count = vertex_count
        self.edges = frozenset(seen)
        self.adjacency = tuple(tuple(sorted(g.adj[u])) for u in range(vertex_count))
        self._nx = nx.freeze(g)
        self._distances = {}
        self._diameter = None
        self._lock = threading.Lock()

    @property
    def n(self):
        return self.vertex_count

    @property
    def edge_count(self):
        return len(self.edges)

    def neighbors(self, u):
        return self.adjacency[u]

    def degree(self, u):
        return len(self.adjacency[u])

    def has_edge(self, u, v):
        return (min(u, v), max(u, v)) in self.edges

    def nx_view(self):
        """Frozen networkx view of this graph (do not mutate)."""
        return self._nx

    def distance(self, u, v):
        return self._distances_from(u)[v]

    def _distances_from(self, source):
        if not (0 <= source < self.vertex_count):
            raise InstanceError(f"source {source} out of range for n={self.vertex_count}")
        with self._lock:
            cached = self._distances.get(source)
        if cached is not None:
            return cached
        lengths = nx.single_source_shortest_path_length(self._nx, source)
        row = tuple(lengths[v] for v in range(self.vertex_count))
        with self._lock:
            self._distances[source] = row
        return row

    def __repr__(self):
        return f"Graph(n={self.vertex_count}, m={len(self.edges)})"


def bfs_distances(g, source):
    """Hop distances from ``source`` to every vertex (memoised per source)."""
    return list(g._distances_from(source))


def diameter(g):
    if g._diameter is None:
        g._diameter = max(max(g._distances_from(u)) for u in range(g.n))
    return g._diameter


def is_connected_subset(g, u_set):
    """True iff the subgraph induced by ``u_set`` is connected (empty set: False)."""
    members = set(u_set)
    if not members:
        return False
    for u in members:
        if not (0 <= u < g.n):
            raise InstanceError(f"vertex {u} out of range for n={g.n}")
    return nx.is_connected(g.nx_view().subgraph(members))


def is_tree(g):
    return g.edge_count == g.n - 1


def is_path(g):
    return is_tree(g) and all(g.degree(u) <= 2 for u in range(g.n))


def path_order(g):
    """Vertices of a path graph listed from its smallest-id endpoint."""
    if not is_path(g):
        raise InstanceError("graph is not a path")
    if g.n == 1:
        return [0]
    start = min(u for u in range(g.n) if g.degree(u) == 1)
    order = [start]
    previous = -1
    current = start
    while len(order) < g.n:
        step = next(v for v in g.neighbors(current) if v != previous)
        previous, current = current, step
        order.append(current)
    return order


def two_coloring(g):
    """Return the two colour classes (A, B) or None if the graph has an odd cycle."""
    view = g.nx_view() if isinstance(g, Graph) else g
    if not nx.is_bipartite(view):
        return None
    colors = nx.bipartite.color(view)
    side_a = frozenset(v for v, c in colors.items() if c == 0)
    side_b = frozenset(v for v, c in colors.items() if c == 1)
    return side_a, side_b


def component_graphs(g, removed):
    """Connected components of G - removed, each relabelled to 0..n_c-1.

    Returns a list of (Graph, local_to_global) ordered by smallest global id.
    """
    removed = set(removed)
    keep = [u for u in range(g.n) if u not in removed]
    view = g.nx_view().subgraph(keep)
    parts = []
    for component in nx.connected_components(view):
        local_to_global = tuple(sorted(component))
        global_to_local = {v: i for i, v in enumerate(local_to_global)}
        edges = [
            (global_to_local[u], global_to_local[v])
            for u, v in view.subgraph(component).edges()
        ]
        parts.append((Graph(len(local_to_global), edges), local_to_global))
    parts.sort(key=lambda item: item[1][0])
    return parts


@dataclass(frozen=True)
class RootedTree:
    """A tree Graph rooted at ``root``; children lists are sorted by id."""

    graph: Graph
    root: int
    parent: tuple
    children: tuple
    postorder: tuple

    @classmethod
    def build(cls, g, root=0):
        if not is_tree(g):
            raise NotATreeError(f"graph with n={g.n} and m={g.edge_count} is not a tree")
        if not (0 <= root < g.n):
            raise InstanceError(f"root {root} out of range for n={g.n}")

        parent = [-1] * g.n
        for child, par in nx.bfs_predecessors(g.nx_view(), root):
            parent[child] = par
        children = [[] for _ in range(g.n)]
        for v in range(g.n):
            if parent[v] >= 0:
                children[parent[v]].append(v)
        postorder = tuple(nx.dfs_postorder_nodes(g.nx_view(), source=root))
        return cls(
            graph=g,
            root=root,
            parent=tuple(parent),
            children=tuple(tuple(c) for c in children),
            postorder=postorder,
        )

    @property
    def n(self):
        return self.graph.n

    def subtree_sizes(self):
        sizes = [1] * self.n
        for u in self.postorder:
            for c in self.children[u]:
                sizes[u] += sizes[c]
        return sizes


def _largest_component_after_removal(tree, sizes, v):
    parts = [sizes[c] for c in tree.children[v]]
    if tree.parent[v] >= 0:
        parts.append(tree.n - sizes[v])
    return max(parts, default=0)


def centroid(t):
    """Smallest-id vertex whose removal leaves components of size <= n // 2."""
    tree = t if isinstance(t, RootedTree) else RootedTree.build(t, 0)
    sizes = tree.subtree_sizes()
    half = tree.n // 2

    # descend towards the heavy child until none is heavier than half
    v = tree.root
    while True:
        heavy = [c for c in tree.children[v] if sizes[c] > half]
        if not heavy:
            break
        v = heavy[0]

    # a second centroid, if any, is adjacent to v
    candidates = [v] + [
        w for w in tree.graph.neighbors(v)
        if _largest_component_after_removal(tree, sizes, w) <= half
    ]
    return min(candidates)
