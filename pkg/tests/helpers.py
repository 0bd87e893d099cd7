"""Shared graph builders and checks for the test suite."""

from __future__ import annotations

import random

from vcsolver import StaticGraph, build_csr


def make_graph(num_vertices: int, edges) -> StaticGraph:
    """Build a graph from any (u, v) iterable; dedupes and drops self-loops."""
    canon = sorted({(min(u, v), max(u, v)) for u, v in edges if u != v})
    return build_csr(canon, num_vertices)


def random_graph(rng: random.Random, n: int, p: float) -> StaticGraph:
    edges = [
        (u, v) for u in range(n) for v in range(u + 1, n) if rng.random() < p
    ]
    return make_graph(n, edges)


def path_edges(n: int) -> list[tuple[int, int]]:
    return [(i, i + 1) for i in range(n - 1)]


def cycle_edges(n: int) -> list[tuple[int, int]]:
    return [(i, (i + 1) % n) for i in range(n)]


def clique_edges(n: int) -> list[tuple[int, int]]:
    return [(u, v) for u in range(n) for v in range(u + 1, n)]


def star_edges(n: int) -> list[tuple[int, int]]:
    # center 0, leaves 1..n-1
    return [(0, i) for i in range(1, n)]


# 5-cycle outer ring, 5-cycle inner pentagram, spokes; MVC = 6.
PETERSEN_EDGES = [
    (0, 1), (1, 2), (2, 3), (3, 4), (4, 0),
    (5, 7), (7, 9), (9, 6), (6, 8), (8, 5),
    (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
]

# Three hubs 1, 4, 7 with leaves; unique MVC {1, 4, 7}.
THREE_HUB_TREE_EDGES = [
    (0, 1), (1, 2), (1, 4), (3, 4), (4, 5), (4, 7), (6, 7), (7, 8),
]


def disjoint_union(*parts: tuple[int, list[tuple[int, int]]]) -> StaticGraph:
    """Glue (n_i, edges_i) blocks side by side with shifted vertex ids."""
    offset = 0
    edges: list[tuple[int, int]] = []
    for n, part in parts:
        edges.extend((u + offset, v + offset) for u, v in part)
        offset += n
    return make_graph(offset, edges)


def write_edge_list(path, edges, header: str | None = None) -> None:
    lines = [] if header is None else [header]
    lines.extend(f"{u} {v}" for u, v in edges)
    path.write_text("\n".join(lines) + "\n")


def assert_valid_cover(g: StaticGraph, cover) -> None:
    members = set(int(v) for v in cover)
    for u in range(g.num_vertices):
        for v in g.neighbors[g.offsets[u] : g.offsets[u + 1]]:
            assert u in members or int(v) in members, f"edge ({u}, {v}) uncovered"


def assert_registry_clean(result) -> None:
    if result.registry is None:
        return
    assert result.registry.quiescence_violations() == []
    assert result.registry.conservation_violations() == []
