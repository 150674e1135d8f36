#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Cross-checks between the brute-force oracles and their guards."""

import itertools

import networkx as nx
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from errors import GuardExceededError
from graph_core import Graph, diameter
from instance_model import Goal, Instance, Measure, Solution, validate
from oracle import (
    _independent_sets,
    has_dominating_clique,
    min_vertex_cover_bruteforce,
    oracle_bounded,
    oracle_clique,
    oracle_ind,
    oracle_solve,
)

PATH3 = Graph(3, [(0, 1), (1, 2)])
STAR = Graph(4, [(0, 1), (0, 2), (0, 3)])


@st.composite
def connected_graphs(draw, max_n=6):
    n = draw(st.integers(1, max_n))
    if n <= 2:
        return Graph(n, [(0, 1)] if n == 2 else [])
    prufer = draw(st.lists(st.integers(0, n - 1), min_size=n - 2, max_size=n - 2))
    edges = {tuple(sorted(e)) for e in nx.from_prufer_sequence(prufer).edges}
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    extra = draw(st.lists(st.sampled_from(pairs), max_size=n))
    return Graph(n, sorted(edges | set(extra)))


@st.composite
def instances(draw, goal, max_k=3):
    g = draw(connected_graphs())
    k = draw(st.integers(1, max_k))
    sigma = tuple(draw(st.lists(st.integers(0, g.n - 1), min_size=k, max_size=k)))
    return Instance(g, sigma, goal)


class TestOracleSolve:
    def test_lexicographically_smallest_optimum(self):
        report = oracle_solve(Instance(STAR, (1, 2), Goal.con()), Measure.SUM)
        assert report.cost == 1
        assert report.solution.mu == (0, 2)
        assert report.method == "oracle"

    def test_infeasible(self):
        result = oracle_solve(Instance(PATH3, (0, 1, 2), Goal.ind()), Measure.MAX)
        assert not result.feasible

    def test_guard(self, monkeypatch):
        monkeypatch.setenv("PEBBLE_ORACLE_LIMIT", "10")
        with pytest.raises(GuardExceededError, match="PEBBLE_ORACLE_LIMIT") as info:
            oracle_solve(Instance(STAR, (1, 2), Goal.con()), Measure.SUM)
        assert info.value.size == 16
        assert info.value.limit == 10

    @settings(max_examples=60, deadline=None)
    @given(instances(Goal.con()))
    def test_measure_relations(self, inst):
        costs = {m: oracle_solve(inst, m).cost for m in Measure}
        assert costs[Measure.MAX] <= costs[Measure.SUM] <= inst.k * costs[Measure.MAX]
        assert costs[Measure.NUM] <= costs[Measure.SUM]


class TestOracleInd:
    def test_guard(self, monkeypatch):
        monkeypatch.setenv("PEBBLE_IND_ORACLE_LIMIT", "1")
        with pytest.raises(GuardExceededError, match="PEBBLE_IND_ORACLE_LIMIT"):
            oracle_ind(Instance(STAR, (1, 2), Goal.ind()), Measure.SUM)

    def test_too_many_pebbles(self):
        assert not oracle_ind(Instance(PATH3, (0, 0, 1, 2), Goal.ind()), Measure.NUM).feasible

    @settings(max_examples=60, deadline=None)
    @given(connected_graphs(max_n=7), st.integers(1, 4))
    def test_independent_sets_in_lexicographic_order(self, g, size):
        expected = [
            c for c in itertools.combinations(range(g.n), size)
            if not any(g.has_edge(u, v) for u, v in itertools.combinations(c, 2))
        ]
        assert _independent_sets(g, size) == expected

    @settings(max_examples=80, deadline=None)
    @given(instances(Goal.ind()), st.sampled_from(list(Measure)))
    def test_matches_full_enumeration(self, inst, measure):
        fast = oracle_ind(inst, measure)
        slow = oracle_solve(inst, measure)
        assert fast.feasible == slow.feasible
        if fast.feasible:
            assert fast.cost == slow.cost
            assert validate(inst, fast.solution)


class TestOracleBounded:
    def test_sum_is_rejected(self):
        with pytest.raises(ValueError):
            oracle_bounded(Instance(PATH3, (0,), Goal.con()), 1, Measure.SUM)

    def test_radius_zero(self):
        assert oracle_bounded(Instance(PATH3, (0, 1), Goal.con()), 0) == Solution((0, 1))
        assert not oracle_bounded(Instance(PATH3, (0, 2), Goal.con()), 0).feasible

    @settings(max_examples=80, deadline=None)
    @given(instances(Goal.con()), st.integers(0, 3))
    def test_decides_max_bound(self, inst, radius):
        optimum = oracle_solve(inst, Measure.MAX).cost
        found = oracle_bounded(inst, radius)
        assert isinstance(found, Solution) == (optimum <= radius)
        if isinstance(found, Solution):
            assert validate(inst, found)

    @settings(max_examples=40, deadline=None)
    @given(instances(Goal.clique()))
    def test_diameter_always_suffices_for_reachable_goals(self, inst):
        assert isinstance(oracle_bounded(inst, diameter(inst.graph)), Solution)


class TestOracleClique:
    @settings(max_examples=80, deadline=None)
    @given(instances(Goal.clique()), st.sampled_from(list(Measure)))
    def test_matches_full_enumeration(self, inst, measure):
        assert oracle_clique(inst, measure).cost == oracle_solve(inst, measure).cost


class TestSmallBruteForces:
    @pytest.mark.parametrize("g, size", [
        (nx.empty_graph(3), 0),
        (nx.path_graph(2), 1),
        (nx.complete_graph(3), 2),
        (nx.path_graph(4), 2),
        (nx.star_graph(4), 1),
    ])
    def test_min_vertex_cover(self, g, size):
        cover = min_vertex_cover_bruteforce(g)
        assert len(cover) == size
        assert all(u in cover or v in cover for u, v in g.edges)

    def test_dominating_clique(self):
        assert has_dominating_clique(nx.path_graph(4))
        assert not has_dominating_clique(nx.path_graph(5))
        assert has_dominating_clique(STAR)
