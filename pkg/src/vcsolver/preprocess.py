"""One-time whole-graph reduction performed before the search starts.

The root pass runs the degree rules and the crown reduction to a joint
fixpoint on the input graph, then compacts the survivors into a fresh CSR
graph so the search works on dense vertex ids with a degree width picked
to fit the reduced maximum degree.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .graph import (
    SUPPORTED_WIDTHS,
    SearchNode,
    StaticGraph,
    induced_subgraph,
    width_capacity,
)
from .reductions import crown_reduce, reduce_to_fixpoint

ROOT_RULE_KEYS = ("degree_one", "degree_two_triangle", "high_degree", "crown")


def greedy_bound(g: StaticGraph, members: bool = False):
    """Cover size from the max-degree greedy heuristic; optionally members."""
    n = g.num_vertices
    if n == 0 or g.num_edges == 0:
        return (0, []) if members else 0
    deg = g.degree_array(32)
    lo, hi = kernels.recompute_bounds(deg, 0, n - 1)
    out = np.empty(n, dtype=np.int32)
    size, pos = kernels.greedy_cover(deg, g.offsets, g.neighbors, lo, hi, out, 0)
    if members:
        return size, [int(out[i]) for i in range(pos)]
    return size


def select_width(max_degree: int, override: int | None = None) -> int:
    """Smallest supported degree width whose capacity fits ``max_degree``."""
    if override is not None:
        if override not in SUPPORTED_WIDTHS:
            raise ValueError(
                f"unsupported degree width {override}; choose one of {SUPPORTED_WIDTHS}"
            )
        if max_degree > width_capacity(override):
            raise ValueError(
                f"max degree {max_degree} does not fit degree width {override}"
            )
        return override
    for width in SUPPORTED_WIDTHS:
        if max_degree <= width_capacity(width):
            return width
    raise ValueError(f"max degree {max_degree} exceeds every supported width")


@dataclass
class Preprocessed:
    """Result of the root reduction pass."""

    graph: StaticGraph
    vertex_map: np.ndarray  # reduced id -> original id
    forced: list[int]  # original ids forced into the cover under construction
    greedy_original: int
    greedy_reduced: int
    width: int
    rule_counts: dict[str, int] = field(default_factory=dict)

    @property
    def forced_count(self) -> int:
        return len(self.forced)


def root_reduce(
    g: StaticGraph,
    enabled: bool = True,
    crown: bool = True,
    bound: int | None = None,
    width_override: int | None = None,
) -> Preprocessed:
    """Reduce the input graph once and compact the residual.

    ``bound`` caps the total cover under construction: the high-degree rule
    may force any vertex with more uncovered edges than ``bound`` minus the
    number already forced.  It defaults to the greedy cover size, which
    always admits a minimum cover.  Reduction stops early if the forced
    count ever exceeds the bound, at which point no cover within the bound
    exists and the caller reports that directly.
    """
    counts = dict.fromkeys(ROOT_RULE_KEYS, 0)
    g_original = greedy_bound(g)
    bound0 = g_original if bound is None else bound

    if not enabled:
        reduced = g
        vmap = np.arange(g.num_vertices, dtype=np.int64)
        return Preprocessed(
            graph=reduced,
            vertex_map=vmap,
            forced=[],
            greedy_original=g_original,
            greedy_reduced=g_original,
            width=select_width(g.max_degree(), width_override),
            rule_counts=counts,
        )

    node = SearchNode.for_graph(g, 32)
    n = g.num_vertices
    out = np.empty(max(n, 1), dtype=np.int32)
    scratch = np.empty(max(n, 1), dtype=np.int32)
    forced: list[int] = []
    pos = 0
    while True:
        progressed = 0
        outcome, newpos = reduce_to_fixpoint(
            node, g, bound0 - node.solution_size, out, pos, scratch
        )
        forced.extend(int(out[i]) for i in range(pos, newpos))
        pos = newpos
        counts["degree_one"] += outcome.degree_one
        counts["degree_two_triangle"] += outcome.degree_two_triangle
        counts["high_degree"] += outcome.high_degree
        progressed += outcome.forced
        if bound is not None and node.solution_size > bound:
            break
        if crown:
            crowned = crown_reduce(node, g)
            if crowned.applied:
                counts["crown"] += 1
                forced.extend(crowned.forced_vertices)
                progressed += len(crowned.forced_vertices)
        if progressed == 0:
            break

    keep = np.nonzero(node.degrees)[0]
    reduced, vmap = induced_subgraph(g, keep)
    return Preprocessed(
        graph=reduced,
        vertex_map=vmap,
        forced=forced,
        greedy_original=g_original,
        greedy_reduced=greedy_bound(reduced),
        width=select_width(reduced.max_degree(), width_override),
        rule_counts=counts,
    )
