"""The brute-force oracle itself has to be trustworthy before anything else."""

from __future__ import annotations

import random

import pytest

from helpers import (
    clique_edges,
    cycle_edges,
    make_graph,
    path_edges,
    random_graph,
    star_edges,
    assert_valid_cover,
)
from vcsolver import brute_force_mvc
from vcsolver.oracle import greedy_cover, greedy_cover_members


def test_empty_graph():
    size, witness = brute_force_mvc(make_graph(0, []))
    assert size == 0
    assert witness == ()


def test_isolated_vertices():
    size, witness = brute_force_mvc(make_graph(5, []))
    assert size == 0
    assert witness == ()


def test_single_edge():
    size, witness = brute_force_mvc(make_graph(2, [(0, 1)]))
    assert size == 1
    assert witness == (0,)


def test_paths():
    # P_n needs floor(n/2)
    for n in range(2, 10):
        size, witness = brute_force_mvc(make_graph(n, path_edges(n)))
        assert size == n // 2
        assert_valid_cover(make_graph(n, path_edges(n)), witness)


def test_cycles():
    # C_n needs ceil(n/2)
    for n in range(3, 12):
        size, _ = brute_force_mvc(make_graph(n, cycle_edges(n)))
        assert size == (n + 1) // 2


def test_cliques():
    # K_n needs n - 1
    for n in range(2, 9):
        size, witness = brute_force_mvc(make_graph(n, clique_edges(n)))
        assert size == n - 1
        assert witness == tuple(range(n - 1))


def test_star():
    size, witness = brute_force_mvc(make_graph(8, star_edges(8)))
    assert size == 1
    assert witness == (0,)


def test_witness_is_lex_smallest_and_valid():
    rng = random.Random(4242)
    for _ in range(50):
        n = rng.randint(2, 12)
        g = random_graph(rng, n, rng.choice([0.2, 0.5, 0.8]))
        size, witness = brute_force_mvc(g)
        assert len(witness) == size
        assert list(witness) == sorted(witness)
        assert_valid_cover(g, witness)
        again = brute_force_mvc(g)
        assert again == (size, witness)


def test_branching_identity():
    """mvc(G) = min(1 + mvc(G - v), deg(v) + mvc(G - N[v])) for any live v."""
    rng = random.Random(1717)
    for _ in range(40):
        n = rng.randint(3, 11)
        g = random_graph(rng, n, 0.4)
        if g.num_edges == 0:
            continue
        full, _ = brute_force_mvc(g)
        v = next(u for u in range(n) if len(g.neighbors_of(u)))
        nbrs = set(int(x) for x in g.neighbors_of(v))

        without_v = make_graph(
            n, [e for e in g.edge_list() if v not in e]
        )
        closed = nbrs | {v}
        without_nbhd = make_graph(
            n, [(a, b) for a, b in g.edge_list() if a not in closed and b not in closed]
        )
        inc, _ = brute_force_mvc(without_v)
        exc, _ = brute_force_mvc(without_nbhd)
        assert full == min(1 + inc, len(nbrs) + exc)


def test_size_guard():
    with pytest.raises(ValueError):
        brute_force_mvc(make_graph(27, [(0, 1)]))


def test_greedy_upper_bound():
    rng = random.Random(99)
    for _ in range(60):
        n = rng.randint(1, 14)
        g = random_graph(rng, n, rng.choice([0.1, 0.4, 0.7]))
        exact, _ = brute_force_mvc(g)
        bound = greedy_cover(g)
        members = greedy_cover_members(g)
        assert exact <= bound <= n
        assert len(members) == bound
        assert_valid_cover(g, members)
