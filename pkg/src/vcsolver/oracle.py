"""Small independent references the solver is checked against.

``brute_force_mvc`` is deliberately a different algorithm from the engine
(edge branching over bitmask graphs, no reductions, no components, no
shared state) so the two can cross-validate each other.
"""

from __future__ import annotations

import numpy as np

from vcsolver import kernels
from vcsolver.graph import StaticGraph

MAX_ORACLE_VERTICES = 26


def _adjacency_masks(g: StaticGraph) -> list[int]:
    adj = [0] * g.num_vertices
    for v in range(g.num_vertices):
        m = 0
        for u in g.neighbors_of(v):
            m |= 1 << int(u)
        adj[v] = m
    return adj


def brute_force_mvc(g: StaticGraph) -> tuple[int, tuple[int, ...]]:
    """Exact minimum vertex cover by exhaustive edge branching.

    Returns (size, witness); the witness is the lexicographically smallest
    minimum cover, so repeated runs agree.  Guarded to n <= 26: beyond that
    the search space stops being a sane test oracle.
    """
    n = g.num_vertices
    if n > MAX_ORACLE_VERTICES:
        raise ValueError(
            f"oracle limited to {MAX_ORACLE_VERTICES} vertices, got {n}"
        )
    adj = _adjacency_masks(g)
    memo: dict[int, int] = {}

    def solve(live: int) -> int:
        # every edge (u, w) needs u or w in the cover; branch both ways
        cached = memo.get(live)
        if cached is not None:
            return cached
        u = -1
        best_d = -1
        rest = live
        while rest:
            v = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            d = (adj[v] & live).bit_count()
            if d > best_d:
                best_d = d
                u = v
        if best_d <= 0:
            memo[live] = 0
            return 0
        nbrs = adj[u] & live
        w = (nbrs & -nbrs).bit_length() - 1
        result = 1 + min(solve(live & ~(1 << u)), solve(live & ~(1 << w)))
        memo[live] = result
        return result

    full = (1 << n) - 1
    size = solve(full)

    cover: list[int] = []
    live = full
    remaining = size
    v = 0
    while remaining > 0:
        without = live & ~(1 << v)
        if adj[v] & live and solve(without) == remaining - 1:
            cover.append(v)
            live = without
            remaining -= 1
        v += 1
    return size, tuple(cover)


def greedy_cover(g: StaticGraph) -> int:
    """Size of the greedy cover: repeatedly take a max-degree vertex."""
    return len(greedy_cover_members(g))


def greedy_cover_members(g: StaticGraph) -> list[int]:
    """The greedy cover itself, in pick order (ties to the lowest index)."""
    n = g.num_vertices
    if n == 0 or g.num_edges == 0:
        return []
    deg = g.degrees().astype(np.uint32)
    out = np.empty(n, dtype=np.int32)
    size, _ = kernels.greedy_cover(deg, g.offsets, g.neighbors, 0, n - 1, out, 0)
    return [int(x) for x in out[:size]]
