"""Node-level reduction rules, special components, and the crown reduction."""

from __future__ import annotations

import random

import numpy as np
import pytest

from helpers import (
    clique_edges,
    cycle_edges,
    make_graph,
    path_edges,
    random_graph,
    star_edges,
)
from vcsolver import brute_force_mvc
from vcsolver.graph import SearchNode
from vcsolver.reductions import (
    ComponentKind,
    apply_degree_one,
    apply_degree_two_triangle,
    apply_high_degree,
    classify_special_component,
    crown_reduce,
    reduce_to_fixpoint,
    solve_special_component,
)


def _node(g, track_inclusion=False):
    return SearchNode.for_graph(g, 8, track_inclusion=track_inclusion)


def _residual_graph(g, node):
    deg = node.degrees
    live = [
        (u, v) for u, v in g.edge_list() if deg[u] > 0 and deg[v] > 0
    ]
    return make_graph(g.num_vertices, live)


def test_degree_one_on_path():
    g = make_graph(4, path_edges(4))
    node = _node(g, track_inclusion=True)
    outcome = apply_degree_one(node, g)
    assert outcome.applications == 2
    assert outcome.forced == 2
    assert outcome.forced_vertices == [1, 2]
    assert outcome.edges_removed == 3
    assert node.solution_size == 2
    assert node.edges_remaining == 0
    assert node.inclusion.tolist() == [False, True, True, False]
    assert node.lo > node.hi


def test_degree_one_runs_to_exhaustion():
    # long path needs several sweeps: each sweep only sees current leaves
    g = make_graph(7, path_edges(7))
    node = _node(g)
    outcome = apply_degree_one(node, g)
    assert node.edges_remaining == 0
    assert outcome.forced == node.solution_size
    size, _ = brute_force_mvc(g)
    assert outcome.forced == size


def test_degree_two_triangle_rule():
    g = make_graph(3, cycle_edges(3))
    node = _node(g)
    outcome = apply_degree_two_triangle(node, g)
    assert outcome.applications == 1
    assert outcome.forced_vertices == [1, 2]
    assert node.solution_size == 2
    assert node.edges_remaining == 0


def test_high_degree_budget_spans_passes():
    # degree-4 star and degree-3 star: budget 3 only reaches the first
    # within one sweep, but the driver re-sweeps with the spent budget
    g = make_graph(9, [(0, 1), (0, 2), (0, 3), (0, 4), (5, 6), (5, 7), (5, 8)])
    node = _node(g)
    outcome = apply_high_degree(node, g, 3)
    assert outcome.applications == 2
    assert outcome.forced_vertices == [0, 5]
    assert node.solution_size == 2
    assert node.edges_remaining == 0


def test_fixpoint_three_hub_tree():
    edges = [(0, 1), (1, 2), (1, 4), (3, 4), (4, 5), (4, 7), (6, 7), (7, 8)]
    g = make_graph(9, edges)
    node = _node(g, track_inclusion=True)
    out = np.empty(9, dtype=np.int32)
    outcome, pos = reduce_to_fixpoint(node, g, budget=100, out=out, pos=0)
    assert outcome.forced == 3
    assert outcome.degree_one == 3
    assert outcome.degree_two_triangle == 0
    assert outcome.high_degree == 0
    assert outcome.edges_removed == 8
    assert out[:pos].tolist() == [1, 4, 7]
    assert node.solution_size == 3
    assert node.edges_remaining == 0
    assert [int(v) for v in np.flatnonzero(node.inclusion)] == [1, 4, 7]


def test_fixpoint_after_branching_on_hub():
    # include-branch on the central hub of the three-hub tree: the leaves
    # become degree-one and force the two outer hubs, emptying the graph
    edges = [(0, 1), (1, 2), (1, 4), (3, 4), (4, 5), (4, 7), (6, 7), (7, 8)]
    g = make_graph(9, edges)
    node = _node(g)
    from vcsolver.graph import remove_vertex

    remove_vertex(node, g, 4, into_cover=True)
    assert node.solution_size == 1
    out = np.empty(9, dtype=np.int32)
    outcome, pos = reduce_to_fixpoint(node, g, budget=100, out=out, pos=0)
    assert outcome.forced == 2
    assert sorted(out[:pos].tolist()) == [1, 7]
    assert node.solution_size == 3
    assert node.edges_remaining == 0


def test_fixpoint_threads_out_cursor():
    g = make_graph(4, path_edges(4))
    node = _node(g)
    out = np.full(8, -1, dtype=np.int32)
    out[0] = 9
    _, pos = reduce_to_fixpoint(node, g, budget=100, out=out, pos=1)
    assert pos == 3
    assert out[:3].tolist() == [9, 1, 2]


def test_fixpoint_low_budget_forces_clique():
    g = make_graph(4, clique_edges(4))
    node = _node(g)
    outcome, _ = reduce_to_fixpoint(node, g, budget=1)
    assert outcome.high_degree == 3
    assert node.solution_size == 3
    assert node.edges_remaining == 0


def test_rule_safety_random():
    """Forcing by any rule must preserve the exact optimum."""
    rng = random.Random(86420)
    for _ in range(250):
        n = rng.randint(3, 13)
        g = random_graph(rng, n, rng.choice([0.15, 0.3, 0.5, 0.8]))
        exact, _ = brute_force_mvc(g)
        rule = rng.randrange(4)
        node = _node(g)
        if rule == 0:
            apply_degree_one(node, g)
        elif rule == 1:
            apply_degree_two_triangle(node, g)
        elif rule == 2:
            apply_high_degree(node, g, exact)
        else:
            reduce_to_fixpoint(node, g, budget=exact)
        rest, _ = brute_force_mvc(_residual_graph(g, node))
        assert node.solution_size + rest == exact


def test_classify_special_components():
    assert classify_special_component(2, 1, 1) is ComponentKind.CLIQUE
    assert classify_special_component(3, 2, 2) is ComponentKind.CLIQUE
    assert classify_special_component(5, 4, 4) is ComponentKind.CLIQUE
    assert classify_special_component(4, 2, 2) is ComponentKind.CHORDLESS_CYCLE
    assert classify_special_component(9, 2, 2) is ComponentKind.CHORDLESS_CYCLE
    assert classify_special_component(4, 1, 2) is ComponentKind.GENERAL
    assert classify_special_component(6, 3, 4) is ComponentKind.GENERAL


def test_solve_special_components():
    assert solve_special_component(ComponentKind.CLIQUE, 2) == 1
    assert solve_special_component(ComponentKind.CLIQUE, 6) == 5
    assert solve_special_component(ComponentKind.CHORDLESS_CYCLE, 5) == 3
    assert solve_special_component(ComponentKind.CHORDLESS_CYCLE, 8) == 4
    with pytest.raises(ValueError):
        solve_special_component(ComponentKind.GENERAL, 4)


def test_special_component_values_match_oracle():
    for n in range(2, 9):
        size, _ = brute_force_mvc(make_graph(n, clique_edges(n)))
        assert solve_special_component(ComponentKind.CLIQUE, n) == size
    for n in range(4, 11):
        size, _ = brute_force_mvc(make_graph(n, cycle_edges(n)))
        assert solve_special_component(ComponentKind.CHORDLESS_CYCLE, n) == size


def test_crown_on_star_with_tail():
    # leaves 2, 3 are the crown, the hub is its head; the tail stays
    g = make_graph(6, [(0, 1), (0, 2), (0, 3), (0, 4), (4, 5)])
    node = _node(g)
    outcome = crown_reduce(node, g)
    assert outcome.applied
    assert outcome.forced_vertices == [0]
    assert outcome.independent_vertices == [2, 3]
    assert outcome.edges_removed == 4
    assert node.solution_size == 1
    assert node.edges_remaining == 1


def test_crown_skips_perfectly_matched_graph():
    g = make_graph(4, cycle_edges(4))
    node = _node(g)
    outcome = crown_reduce(node, g)
    assert not outcome.applied
    assert node.solution_size == 0
    assert node.edges_remaining == 4


def test_crown_on_empty_window():
    g = make_graph(3, [])
    node = _node(g)
    outcome = crown_reduce(node, g)
    assert not outcome.applied


def test_crown_safety_random():
    rng = random.Random(5150)
    applied = 0
    for _ in range(250):
        n = rng.randint(4, 14)
        g = random_graph(rng, n, rng.choice([0.1, 0.2, 0.4]))
        exact, _ = brute_force_mvc(g)
        node = _node(g)
        outcome = crown_reduce(node, g)
        if outcome.applied:
            applied += 1
            # the independent side must really be independent and dead
            for v in outcome.independent_vertices:
                assert node.degrees[v] == 0
        rest, _ = brute_force_mvc(_residual_graph(g, node))
        assert node.solution_size + rest == exact
    # the check is only meaningful if crowns actually fire
    assert applied >= 10


def test_crown_iterates_with_rules_on_pendant_cascade():
    # crowns exposed only after degree-one clears the fringe
    rng = random.Random(11)
    g = random_graph(rng, 12, 0.3)
    exact, _ = brute_force_mvc(g)
    node = _node(g)
    while True:
        before = node.solution_size
        reduce_to_fixpoint(node, g, budget=exact - node.solution_size)
        crown_reduce(node, g)
        if node.solution_size == before:
            break
    rest, _ = brute_force_mvc(_residual_graph(g, node))
    assert node.solution_size + rest == exact
