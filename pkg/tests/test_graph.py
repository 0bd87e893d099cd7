"""CSR construction, degree widths, and the per-node search state."""

from __future__ import annotations

import numpy as np
import pytest

from helpers import clique_edges, make_graph, path_edges
from vcsolver import build_csr, induced_subgraph
from vcsolver.graph import (
    SearchNode,
    StaticGraph,
    dtype_for_width,
    recompute_node_bounds,
    remove_neighbors,
    remove_vertex,
    width_capacity,
)


def test_p3_layout():
    g = make_graph(3, path_edges(3))
    assert g.num_vertices == 3
    assert g.num_edges == 2
    assert list(g.offsets) == [0, 1, 3, 4]
    assert list(g.neighbors) == [1, 0, 2, 1]


def test_neighbor_slices_sorted():
    g = make_graph(6, [(3, 0), (5, 0), (0, 1), (2, 0), (4, 0)])
    assert list(g.neighbors_of(0)) == [1, 2, 3, 4, 5]
    assert g.degrees().tolist() == [5, 1, 1, 1, 1, 1]
    assert g.max_degree() == 5


def test_empty_graph_layout():
    g = make_graph(0, [])
    assert g.num_vertices == 0
    assert g.num_edges == 0
    assert list(g.offsets) == [0]


def test_build_csr_rejects_bad_input():
    with pytest.raises(ValueError):
        build_csr([(0, 1)], -1)
    with pytest.raises(ValueError):
        build_csr([(0, 5)], 3)
    with pytest.raises(ValueError):
        build_csr([(-1, 0)], 3)


def test_edge_list_round_trip():
    edges = [(0, 2), (1, 2), (3, 4), (0, 4)]
    g = make_graph(5, edges)
    assert g.edge_list() == sorted(edges)


def test_induced_subgraph_relabels():
    g = make_graph(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5)])
    sub, vmap = induced_subgraph(g, [1, 2, 4, 5])
    assert list(vmap) == [1, 2, 4, 5]
    # surviving edges: (1,2) -> (0,1) and (4,5) -> (2,3)
    assert sub.edge_list() == [(0, 1), (2, 3)]


def test_induced_subgraph_range_check():
    g = make_graph(3, path_edges(3))
    with pytest.raises(ValueError):
        induced_subgraph(g, [0, 3])


def test_width_capacity_reserves_all_ones():
    assert width_capacity(8) == 254
    assert width_capacity(16) == 65534
    assert dtype_for_width(8) == np.uint8
    assert dtype_for_width(32) == np.uint32
    with pytest.raises(ValueError):
        dtype_for_width(12)


def test_degree_array_width_guard():
    # star with max degree 255 does not fit width 8 (255 is the poison value)
    g = make_graph(256, [(0, i) for i in range(1, 256)])
    with pytest.raises(ValueError):
        g.degree_array(8)
    deg = g.degree_array(16)
    assert deg.dtype == np.uint16
    assert int(deg[0]) == 255


def test_search_node_for_graph():
    g = make_graph(4, path_edges(4))
    node = SearchNode.for_graph(g, 8)
    assert node.solution_size == 0
    assert node.edges_remaining == 3
    assert (node.lo, node.hi) == (0, 3)
    assert node.inclusion is None
    assert node.live_count() == 4


def test_remove_vertex_updates_state():
    g = make_graph(4, path_edges(4))
    node = SearchNode.for_graph(g, 8, track_inclusion=True)
    edges = remove_vertex(node, g, 1, into_cover=True)
    assert edges == 2
    assert node.edges_remaining == 1
    assert node.solution_size == 1
    assert node.degrees.tolist() == [0, 0, 1, 1]
    assert node.inclusion.tolist() == [False, True, False, False]
    # removing an isolated vertex is pure bookkeeping
    assert remove_vertex(node, g, 0, into_cover=True) == 0
    assert node.solution_size == 2


def test_remove_neighbors_forces_all_live():
    g = make_graph(5, clique_edges(5))
    node = SearchNode.for_graph(g, 8, track_inclusion=True)
    out = np.zeros(16, dtype=np.int32)
    removed, pos = remove_neighbors(node, g, 0, out, 0)
    assert removed == 4
    assert sorted(int(v) for v in out[:pos]) == [1, 2, 3, 4]
    assert node.solution_size == 4
    assert node.edges_remaining == 0
    assert node.degrees.tolist() == [0, 0, 0, 0, 0]
    assert node.inclusion.tolist() == [False, True, True, True, True]


def test_copy_is_independent():
    g = make_graph(4, path_edges(4))
    node = SearchNode.for_graph(g, 8, track_inclusion=True)
    clone = node.copy()
    remove_vertex(node, g, 1, into_cover=True)
    assert clone.solution_size == 0
    assert clone.edges_remaining == 3
    assert clone.degrees.tolist() == [1, 2, 2, 1]
    assert not clone.inclusion.any()


def test_recompute_node_bounds_shrinks_window():
    g = make_graph(5, path_edges(5))
    node = SearchNode.for_graph(g, 8)
    remove_vertex(node, g, 0, into_cover=False)
    remove_vertex(node, g, 1, into_cover=True)
    recompute_node_bounds(node)
    assert (node.lo, node.hi) == (2, 4)
    # clearing everything collapses the window to empty
    for v in (2, 3, 4):
        remove_vertex(node, g, v, into_cover=False)
    recompute_node_bounds(node)
    assert node.lo > node.hi
    assert node.live_count() == 0
