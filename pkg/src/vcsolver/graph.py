"""Static CSR graphs and the per-node degree-array search state.

The graph topology is built once and never mutated; all search state lives
in a compact per-node degree array whose width (8/16/32 bits) is chosen from
the maximum degree.  The all-ones value of each width is reserved as a debug
poison, so a width only qualifies when every degree is strictly below it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from vcsolver import kernels

SUPPORTED_WIDTHS = (8, 16, 32)
_WIDTH_DTYPES = {8: np.uint8, 16: np.uint16, 32: np.uint32}


def dtype_for_width(width: int) -> np.dtype:
    if width not in _WIDTH_DTYPES:
        raise ValueError(f"unsupported degree width {width}; choose one of {SUPPORTED_WIDTHS}")
    return np.dtype(_WIDTH_DTYPES[width])


def width_capacity(width: int) -> int:
    """Largest degree a width can hold (all-ones is reserved)."""
    return (1 << width) - 2


@dataclass(frozen=True, eq=False)
class StaticGraph:
    """Undirected graph in CSR form: sorted neighbor slices, both directions."""

    num_vertices: int
    offsets: np.ndarray  # int64, length num_vertices + 1
    neighbors: np.ndarray  # int32, length 2 * num_edges

    @property
    def num_edges(self) -> int:
        return len(self.neighbors) // 2

    def neighbors_of(self, v: int) -> np.ndarray:
        return self.neighbors[self.offsets[v] : self.offsets[v + 1]]

    def degrees(self) -> np.ndarray:
        return np.diff(self.offsets)

    def max_degree(self) -> int:
        if self.num_vertices == 0:
            return 0
        return int(np.max(np.diff(self.offsets)))

    def degree_array(self, width: int) -> np.ndarray:
        """Fresh mutable degree array at the given width."""
        deg = np.diff(self.offsets)
        if self.num_vertices and int(deg.max(initial=0)) > width_capacity(width):
            raise ValueError(
                f"max degree {int(deg.max())} does not fit degree width {width}"
            )
        return deg.astype(dtype_for_width(width))

    def edge_list(self) -> list[tuple[int, int]]:
        """Canonical (min, max) edge tuples, sorted."""
        out = []
        for v in range(self.num_vertices):
            for u in self.neighbors_of(v):
                if v < u:
                    out.append((v, int(u)))
        return out


def build_csr(edges, num_vertices: int) -> StaticGraph:
    """Build a CSR graph from canonical (u, v) edges over [0, num_vertices).

    Edges must already be deduplicated, self-loop free, and u < v; every
    neighbor slice comes out sorted ascending.
    """
    if num_vertices < 0:
        raise ValueError("num_vertices must be non-negative")
    arr = np.asarray(list(edges), dtype=np.int64).reshape(-1, 2)
    if len(arr):
        if int(arr.min()) < 0 or int(arr.max()) >= num_vertices:
            raise ValueError("edge endpoint out of range")
        both = np.concatenate([arr, arr[:, ::-1]])
        order = np.lexsort((both[:, 1], both[:, 0]))
        both = both[order]
        neighbors = np.ascontiguousarray(both[:, 1], dtype=np.int32)
        counts = np.bincount(both[:, 0], minlength=num_vertices)
    else:
        neighbors = np.zeros(0, dtype=np.int32)
        counts = np.zeros(num_vertices, dtype=np.int64)
    offsets = np.zeros(num_vertices + 1, dtype=np.int64)
    np.cumsum(counts, out=offsets[1:])
    return StaticGraph(num_vertices, offsets, neighbors)


def induced_subgraph(g: StaticGraph, keep) -> tuple[StaticGraph, np.ndarray]:
    """Subgraph induced on ``keep``; also returns vertex_map (new -> old).

    vertex_map is strictly increasing, so relative vertex order survives.
    """
    kept = np.asarray(sorted({int(v) for v in keep}), dtype=np.int64)
    if len(kept) and (kept[0] < 0 or kept[-1] >= g.num_vertices):
        raise ValueError("keep vertex out of range")
    mask = np.zeros(g.num_vertices, dtype=bool)
    mask[kept] = True
    new_id = np.full(g.num_vertices, -1, dtype=np.int64)
    new_id[kept] = np.arange(len(kept))
    slices = []
    counts = np.zeros(len(kept), dtype=np.int64)
    for i, v in enumerate(kept):
        sl = g.neighbors_of(int(v))
        live = sl[mask[sl]]
        counts[i] = len(live)
        slices.append(new_id[live].astype(np.int32))
    offsets = np.zeros(len(kept) + 1, dtype=np.int64)
    np.cumsum(counts, out=offsets[1:])
    neighbors = (
        np.concatenate(slices) if slices else np.zeros(0, dtype=np.int32)
    )
    return StaticGraph(len(kept), offsets, neighbors), kept


class SearchNode:
    """Mutable state of one branch-and-reduce tree node.

    Owned by exactly one worker at a time; the degree array is written with
    plain stores under that ownership.  ``scope`` is the index of the
    registry entry whose bound governs this node.  ``inclusion`` is an
    optional per-vertex cover bitmap, carried only during cover
    reconstruction runs.
    """

    __slots__ = (
        "degrees",
        "solution_size",
        "edges_remaining",
        "lo",
        "hi",
        "scope",
        "depth",
        "inclusion",
    )

    def __init__(self, degrees, solution_size, edges_remaining, lo, hi, scope, depth, inclusion=None):
        self.degrees = degrees
        self.solution_size = solution_size
        self.edges_remaining = edges_remaining
        self.lo = lo
        self.hi = hi
        self.scope = scope
        self.depth = depth
        self.inclusion = inclusion

    @classmethod
    def for_graph(cls, g: StaticGraph, width: int, scope: int = 0, track_inclusion: bool = False):
        deg = g.degree_array(width)
        n = g.num_vertices
        if n and g.num_edges:
            lo, hi = kernels.recompute_bounds(deg, 0, n - 1)
        else:
            lo, hi = max(n, 1), 0
        inclusion = np.zeros(n, dtype=bool) if track_inclusion else None
        return cls(deg, 0, g.num_edges, lo, hi, scope, 0, inclusion)

    def copy(self) -> "SearchNode":
        inc = None if self.inclusion is None else self.inclusion.copy()
        return SearchNode(
            self.degrees.copy(),
            self.solution_size,
            self.edges_remaining,
            self.lo,
            self.hi,
            self.scope,
            self.depth,
            inc,
        )

    def live_count(self) -> int:
        if self.lo > self.hi:
            return 0
        return kernels.count_live(self.degrees, self.lo, self.hi)


def remove_vertex(node: SearchNode, g: StaticGraph, v: int, into_cover: bool) -> int:
    """Remove v from the residual graph; returns edges removed.

    Removing an already-isolated vertex only does cover bookkeeping.
    """
    e = kernels.remove_vertex(node.degrees, g.offsets, g.neighbors, v)
    node.edges_remaining -= e
    if into_cover:
        node.solution_size += 1
        if node.inclusion is not None:
            node.inclusion[v] = True
    return e


def remove_neighbors(node: SearchNode, g: StaticGraph, v: int, out, pos: int):
    """Force all live neighbors of v into the cover; v ends up isolated."""
    removed, edges, newpos = kernels.remove_neighbors(
        node.degrees, g.offsets, g.neighbors, v, out, pos
    )
    node.edges_remaining -= edges
    node.solution_size += removed
    if node.inclusion is not None:
        for i in range(pos, newpos):
            node.inclusion[out[i]] = True
    return removed, newpos


def recompute_node_bounds(node: SearchNode) -> None:
    """Shrink the node's live-vertex window; never widens it."""
    node.lo, node.hi = kernels.recompute_bounds(node.degrees, node.lo, node.hi)
