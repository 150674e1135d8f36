#!/usr/bin/env python3
# -*- coding: utf-8 -*-
"""Tests for the tree dynamic programs, checked against the brute-force oracles."""

from collections import Counter

import networkx as nx
import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from errors import GoalMismatchError, InstanceError, NotATreeError
from graph_core import Graph, RootedTree
from instance_model import Goal, GuaranteeKind, Instance, Measure, check_report, validate
from oracle import oracle_ind, oracle_solve
from tree_dp_solvers import (
    INF,
    DistributionMode,
    assign_by_transport,
    assign_keeping_residents,
    con_sum_table,
    edge_flow_cost,
    optimal_distribution,
    pebble_census,
    prefix_minima,
    solve_con_num_tree,
    solve_con_sum_tree,
    solve_ind_num_tree,
    solve_ind_sum_tree,
)

PATH3 = Graph(3, [(0, 1), (1, 2)])
PATH5 = Graph(5, [(i, i + 1) for i in range(4)])
STAR = Graph(4, [(0, 1), (0, 2), (0, 3)])


def tree_graph(n, prufer):
    if n <= 2:
        return Graph(n, [(0, 1)] if n == 2 else [])
    return Graph(n, list(nx.from_prufer_sequence(prufer).edges))


@st.composite
def tree_instances(draw, goal, max_n=8, max_k=4):
    n = draw(st.integers(1, max_n))
    prufer = draw(st.lists(st.integers(0, n - 1), min_size=max(n - 2, 0), max_size=max(n - 2, 0)))
    k = draw(st.integers(1, max_k))
    sigma = draw(st.lists(st.integers(0, n - 1), min_size=k, max_size=k))
    return Instance(tree_graph(n, prufer), tuple(sigma), goal)


def end_counts(inst, mu):
    counts = Counter(mu)
    return [counts[v] for v in range(inst.n)]


class TestOptimalDistribution:
    def test_single_child(self):
        assert optimal_distribution([[5, 2]], 1, DistributionMode.EXACTLY) == (2, [1])

    def test_two_children_exactly(self):
        cost, allocation = optimal_distribution([[0, 1], [0, 1]], 1, DistributionMode.EXACTLY)
        assert cost == 1
        assert allocation in ([1, 0], [0, 1])

    def test_two_children_at_most(self):
        assert optimal_distribution([[0, 1], [0, 1]], 1, DistributionMode.AT_MOST) == (0, [0, 0])

    def test_infeasible_budget(self):
        assert optimal_distribution([[0, INF]], 1, DistributionMode.EXACTLY) == (INF, None)

    def test_no_children(self):
        assert optimal_distribution([], 0) == (0, [])
        assert optimal_distribution([], 2)[0] == INF

    def test_negative_budget(self):
        with pytest.raises(InstanceError):
            optimal_distribution([[0]], -1)

    @settings(max_examples=60, deadline=None)
    @given(st.lists(st.lists(st.integers(0, 9), min_size=4, max_size=4), min_size=1, max_size=3),
           st.integers(0, 3))
    def test_matches_enumeration(self, rows, budget):
        best = min(
            (sum(row[h] for row, h in zip(rows, alloc)), alloc)
            for alloc in np.ndindex(*(budget + 1,) * len(rows))
            if sum(alloc) == budget
        )
        cost, allocation = optimal_distribution(rows, budget)
        assert cost == best[0]
        assert sum(allocation) == budget
        assert sum(row[h] for row, h in zip(rows, allocation)) == cost


class TestHelpers:
    def test_prefix_minima_prefers_the_last_tie(self):
        best, at = prefix_minima(np.array([3, 1, 2, 1, 5, 0], dtype=np.int64))
        assert best.tolist() == [3, 1, 1, 1, 1, 0]
        assert at.tolist() == [0, 1, 1, 3, 3, 5]

    def test_prefix_minima_with_unreachable_entries(self):
        best, at = prefix_minima(np.array([INF, 2, INF, 2], dtype=np.int64))
        assert best.tolist() == [INF, 2, 2, 2]
        assert at.tolist() == [0, 1, 1, 3]

    def test_pebble_census(self):
        tree = RootedTree.build(STAR, 0)
        census = pebble_census(tree, (1, 1, 3), residents=[True, False, True])
        assert census.eta == (3, 2, 0, 1)
        assert census.phi == (0, 1, 0, 1)
        assert census.gamma == (0, 1, 0, 1)

    def test_transport_on_path(self):
        tree = RootedTree.build(PATH5, 0)
        mu = assign_by_transport(tree, (0, 4), [0, 1, 1, 0, 0])
        assert sorted(mu) == [1, 2]
        assert edge_flow_cost(tree, (0, 4), [0, 1, 1, 0, 0]) == 3

    def test_transport_rejects_wrong_total(self):
        with pytest.raises(InstanceError):
            assign_by_transport(RootedTree.build(PATH3, 0), (0,), [1, 1, 0])

    def test_keeping_residents(self):
        assert assign_keeping_residents((2, 2, 0), [0, 1, 2]) == (2, 2, 1)

    @settings(max_examples=80, deadline=None)
    @given(tree_instances(Goal.con()), st.data())
    def test_transport_cost_equals_edge_flow(self, inst, data):
        counts = [0] * inst.n
        for v in data.draw(st.lists(st.integers(0, inst.n - 1), min_size=inst.k, max_size=inst.k)):
            counts[v] += 1
        tree = RootedTree.build(inst.graph, 0)
        mu = assign_by_transport(tree, inst.sigma, counts)
        assert end_counts(inst, mu) == counts
        total = sum(inst.graph.distance(s, e) for s, e in zip(inst.sigma, mu))
        assert total == edge_flow_cost(tree, inst.sigma, counts)

    def test_con_sum_rows_are_finite(self):
        table = con_sum_table(RootedTree.build(STAR, 0), (1, 2, 3))
        assert (table.opt < INF).all()


class TestConSum:
    @pytest.mark.parametrize("g, sigma, expected", [
        (STAR, (1, 2), 1),
        (STAR, (3, 3, 3), 0),
        (PATH5, (0, 4), 3),
        (PATH5, (2,), 0),
        (Graph(1), (0, 0), 0),
    ])
    def test_examples(self, g, sigma, expected):
        report = solve_con_sum_tree(Instance(g, sigma, Goal.con()))
        assert report.cost == expected
        assert report.method == "con-sum-tree-dp"
        assert report.guarantee.kind is GuaranteeKind.EXACT
        assert check_report(Instance(g, sigma, Goal.con()), report)

    def test_rejects_cycle(self):
        cycle = Graph(3, [(0, 1), (1, 2), (2, 0)])
        with pytest.raises(NotATreeError, match="exact solver requires a tree"):
            solve_con_sum_tree(Instance(cycle, (0, 1), Goal.con()))

    def test_rejects_other_goal(self):
        with pytest.raises(GoalMismatchError):
            solve_con_sum_tree(Instance(PATH3, (0, 2), Goal.ind()))

    @settings(max_examples=60, deadline=None)
    @given(tree_instances(Goal.con()))
    def test_matches_oracle_without_crossings(self, inst):
        report = solve_con_sum_tree(inst)
        assert report.cost == oracle_solve(inst, Measure.SUM).cost
        assert validate(inst, report.solution)
        tree = RootedTree.build(inst.graph, 0)
        assert report.cost == edge_flow_cost(tree, inst.sigma, end_counts(inst, report.solution.mu))


class TestConNum:
    @pytest.mark.parametrize("g, sigma, expected", [
        (STAR, (1, 2), 1),
        (STAR, (0, 1), 0),
        (PATH5, (0, 2, 4), 1),
        (PATH5, (0, 0, 4, 4), 2),
    ])
    def test_examples(self, g, sigma, expected):
        inst = Instance(g, sigma, Goal.con())
        report = solve_con_num_tree(inst)
        assert report.cost == expected
        assert report.cost == oracle_solve(inst, Measure.NUM).cost

    @settings(max_examples=60, deadline=None)
    @given(tree_instances(Goal.con()))
    def test_matches_oracle(self, inst):
        report = solve_con_num_tree(inst)
        assert report.cost == oracle_solve(inst, Measure.NUM).cost
        assert check_report(inst, report)


class TestIndSum:
    @pytest.mark.parametrize("g, sigma, expected", [
        (PATH5, (1, 2), 1),
        (PATH5, (0, 2, 4), 0),
        (PATH3, (1, 1), 2),
    ])
    def test_examples(self, g, sigma, expected):
        report = solve_ind_sum_tree(Instance(g, sigma, Goal.ind()))
        assert report.cost == expected

    def test_infeasible_when_no_independent_set(self):
        result = solve_ind_sum_tree(Instance(PATH3, (0, 1, 2), Goal.ind()))
        assert not result.feasible
        assert result.method == "ind-sum-tree-dp"

    def test_infeasible_when_more_pebbles_than_vertices(self):
        assert not solve_ind_sum_tree(Instance(PATH3, (0, 1, 2, 2), Goal.ind())).feasible

    @settings(max_examples=60, deadline=None)
    @given(tree_instances(Goal.ind()))
    def test_matches_oracle(self, inst):
        report = solve_ind_sum_tree(inst)
        truth = oracle_ind(inst, Measure.SUM)
        assert report.feasible == truth.feasible
        if report.feasible:
            assert report.cost == truth.cost
            assert len(set(report.solution.mu)) == inst.k
            tree = RootedTree.build(inst.graph, 0)
            assert report.cost == edge_flow_cost(tree, inst.sigma, end_counts(inst, report.solution.mu))


class TestIndNum:
    @pytest.mark.parametrize("g, sigma, expected", [
        (PATH5, (1, 2), 1),
        (PATH5, (0, 4), 0),
        (STAR, (0, 1, 1), 2),
    ])
    def test_examples(self, g, sigma, expected):
        report = solve_ind_num_tree(Instance(g, sigma, Goal.ind()))
        assert report.cost == expected

    @settings(max_examples=60, deadline=None)
    @given(tree_instances(Goal.ind()))
    def test_matches_oracle(self, inst):
        report = solve_ind_num_tree(inst)
        truth = oracle_ind(inst, Measure.NUM)
        assert report.feasible == truth.feasible
        if report.feasible:
            assert report.cost == truth.cost
            assert validate(inst, report.solution)
