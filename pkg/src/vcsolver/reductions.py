"""Reduction rules over degree-array search state.

The three lightweight rules (degree-one, degree-two triangle, high-degree)
run as sweeps over the live window of a node's degree array and force
vertices into the cover without branching.  ``reduce_to_fixpoint`` is the
driver the search calls at every node; the ``apply_*`` functions expose each
rule on its own for tests and for callers that want a single rule.

Also here: classification of components that are solvable in closed form
(cliques and chordless cycles), and the crown reduction used during root
preprocessing.
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .graph import SearchNode, StaticGraph


@dataclass
class ReductionOutcome:
    """What one rule (or the fixpoint driver) did to a node."""

    applications: int = 0
    forced: int = 0
    edges_removed: int = 0
    forced_vertices: list[int] = field(default_factory=list)


@dataclass
class FixpointOutcome:
    """Per-rule application counts for one run of the fixpoint driver."""

    forced: int = 0
    degree_one: int = 0
    degree_two_triangle: int = 0
    high_degree: int = 0
    edges_removed: int = 0


def _scratch_for(node: SearchNode) -> np.ndarray:
    return np.empty(len(node.degrees), dtype=np.int32)


def _record(node: SearchNode, out: np.ndarray, start: int, stop: int) -> list[int]:
    forced = [int(out[i]) for i in range(start, stop)]
    node.solution_size += stop - start
    if node.inclusion is not None:
        for v in forced:
            node.inclusion[v] = 1
    return forced


def _run_rule(node: SearchNode, g: StaticGraph, pass_fn, *extra) -> ReductionOutcome:
    out = np.empty(len(node.degrees), dtype=np.int32)
    scratch = _scratch_for(node)
    outcome = ReductionOutcome()
    pos = 0
    while True:
        applied, forced, edges, pos = pass_fn(
            node.degrees,
            g.offsets,
            g.neighbors,
            node.lo,
            node.hi,
            *extra,
            out,
            pos,
            scratch,
        )
        outcome.applications += applied
        outcome.edges_removed += edges
        node.edges_remaining -= edges
        if applied == 0:
            break
        if extra:
            # shrinking high-degree budget: one forced vertex spends one unit
            extra = (extra[0] - forced,)
    outcome.forced_vertices = _record(node, out, 0, pos)
    outcome.forced = pos
    recompute_node_bounds_inplace(node)
    return outcome


def recompute_node_bounds_inplace(node: SearchNode) -> None:
    node.lo, node.hi = kernels.recompute_bounds(node.degrees, node.lo, node.hi)


def apply_degree_one(node: SearchNode, g: StaticGraph) -> ReductionOutcome:
    """Force the neighbor of every degree-one vertex, repeated to exhaustion."""
    return _run_rule(node, g, kernels.degree_one_pass)


def apply_degree_two_triangle(node: SearchNode, g: StaticGraph) -> ReductionOutcome:
    """Force both neighbors of every degree-2 vertex whose neighbors touch."""
    return _run_rule(node, g, kernels.degree_two_triangle_pass)


def apply_high_degree(node: SearchNode, g: StaticGraph, budget: int) -> ReductionOutcome:
    """Force every live vertex with degree above the remaining cover budget."""
    return _run_rule(node, g, kernels.high_degree_pass, budget)


def reduce_to_fixpoint(
    node: SearchNode,
    g: StaticGraph,
    budget: int,
    out: np.ndarray | None = None,
    pos: int = 0,
    scratch: np.ndarray | None = None,
) -> tuple[FixpointOutcome, int]:
    """Run all rules to a joint fixpoint and update node bookkeeping.

    ``budget`` is the high-degree allowance on entry; the kernel shrinks it
    as vertices are forced.  Forced vertex ids land in ``out`` starting at
    ``pos``.  Returns (outcome, new_pos).
    """
    if out is None:
        out = np.empty(len(node.degrees), dtype=np.int32)
    if scratch is None:
        scratch = _scratch_for(node)
    start = pos
    forced, d1, d2t, hd, edges, lo, hi, pos = kernels.reduce_fixpoint(
        node.degrees,
        g.offsets,
        g.neighbors,
        node.lo,
        node.hi,
        budget,
        out,
        pos,
        scratch,
    )
    node.lo = lo
    node.hi = hi
    node.edges_remaining -= edges
    _record(node, out, start, pos)
    outcome = FixpointOutcome(
        forced=forced,
        degree_one=d1,
        degree_two_triangle=d2t,
        high_degree=hd,
        edges_removed=edges,
    )
    return outcome, pos


class ComponentKind(enum.Enum):
    CLIQUE = "clique"
    CHORDLESS_CYCLE = "chordless_cycle"
    GENERAL = "general"


def classify_special_component(size: int, min_degree: int, max_degree: int) -> ComponentKind:
    """Classify a connected component from its degree summary alone.

    Uniform degree size-1 can only be a clique; uniform degree 2 on three
    or more vertices can only be a single chordless cycle.  K3 satisfies
    both and counts as a clique.
    """
    if min_degree == max_degree:
        if min_degree == size - 1:
            return ComponentKind.CLIQUE
        if min_degree == 2 and size >= 3:
            return ComponentKind.CHORDLESS_CYCLE
    return ComponentKind.GENERAL


def solve_special_component(kind: ComponentKind, size: int) -> int:
    """Exact cover size for a special component."""
    if kind is ComponentKind.CLIQUE:
        return size - 1
    if kind is ComponentKind.CHORDLESS_CYCLE:
        return (size + 1) // 2
    raise ValueError("general components have no closed-form cover size")


@dataclass
class CrownOutcome:
    """Result of one crown reduction attempt."""

    forced_vertices: list[int] = field(default_factory=list)
    independent_vertices: list[int] = field(default_factory=list)
    edges_removed: int = 0

    @property
    def applied(self) -> bool:
        return bool(self.forced_vertices)


_BARRED = -1


def _try_augment(root, adj, dist, pair_left, pair_right) -> bool:
    # iterative alternating DFS constrained to the current BFS layering
    stack = [(root, iter(adj[root]))]
    trail: list[tuple[int, int]] = []
    while stack:
        v, edges = stack[-1]
        advanced = False
        for h in edges:
            w = pair_right.get(h)
            if w is None:
                pair_left[v] = h
                pair_right[h] = v
                for tv, th in trail:
                    pair_left[tv] = th
                    pair_right[th] = tv
                return True
            if dist.get(w) == dist[v] + 1:
                trail.append((v, h))
                stack.append((w, iter(adj[w])))
                advanced = True
                break
        if not advanced:
            dist[v] = _BARRED
            stack.pop()
            if trail:
                trail.pop()
    return False


def _hopcroft_karp(left: list[int], adj: dict[int, list[int]]):
    """Maximum bipartite matching; returns (pair_left, pair_right)."""
    pair_left: dict[int, int | None] = {v: None for v in left}
    pair_right: dict[int, int | None] = {}
    while True:
        dist: dict[int, int] = {}
        queue: deque[int] = deque()
        for v in left:
            if pair_left[v] is None:
                dist[v] = 0
                queue.append(v)
        reachable_free = False
        while queue:
            v = queue.popleft()
            for h in adj[v]:
                w = pair_right.get(h)
                if w is None:
                    reachable_free = True
                elif w not in dist:
                    dist[w] = dist[v] + 1
                    queue.append(w)
        if not reachable_free:
            break
        augmented = 0
        for root in left:
            if pair_left[root] is None and _try_augment(
                root, adj, dist, pair_left, pair_right
            ):
                augmented += 1
        if augmented == 0:
            break
    return pair_left, pair_right


def crown_reduce(node: SearchNode, g: StaticGraph) -> CrownOutcome:
    """Find and remove one crown, forcing its head into the cover.

    A crown is an independent set I with neighborhood H such that H is
    saturated by a matching into I; some minimum cover then takes all of H
    and none of I.  Built from a greedy maximal matching (its unmatched
    vertices form the candidate independent side) plus a maximum bipartite
    matching and its alternating closure from unmatched candidates.
    """
    outcome = CrownOutcome()
    deg = node.degrees
    if node.lo > node.hi:
        return outcome
    live = [v for v in range(node.lo, node.hi + 1) if deg[v] > 0]
    if not live:
        return outcome

    partner: dict[int, int] = {}
    for v in live:
        if v in partner:
            continue
        for u in g.neighbors_of(v):
            u = int(u)
            if deg[u] > 0 and u not in partner:
                partner[v] = u
                partner[u] = v
                break
    outside = [v for v in live if v not in partner]
    if not outside:
        return outcome

    adj = {
        v: [int(u) for u in g.neighbors_of(v) if deg[int(u)] > 0] for v in outside
    }
    pair_left, pair_right = _hopcroft_karp(outside, adj)
    seed = [v for v in outside if pair_left[v] is None]
    if not seed:
        return outcome

    crown_i = set(seed)
    while True:
        heads = {h for v in crown_i for h in adj[v]}
        pulled = {pair_right[h] for h in heads if pair_right.get(h) is not None}
        fresh = pulled - crown_i
        if not fresh:
            break
        crown_i |= fresh

    for h in sorted(heads):
        outcome.edges_removed += kernels.remove_vertex(deg, g.offsets, g.neighbors, h)
        outcome.forced_vertices.append(h)
        if node.inclusion is not None:
            node.inclusion[h] = 1
    node.solution_size += len(outcome.forced_vertices)
    node.edges_remaining -= outcome.edges_removed
    outcome.independent_vertices = sorted(crown_i)
    recompute_node_bounds_inplace(node)
    return outcome
