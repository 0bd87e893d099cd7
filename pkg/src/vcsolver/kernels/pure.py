"""Pure-Python reference implementations of the hot solver kernels.

Every function here has a compiled twin in ``_native`` with the same
signature and, by contract, identical behaviour: same candidate order, same
tie-breaks, same returned counters.  The parity tests in
``tests/test_kernels.py`` hold the two backends to that.

All kernels operate on the degree-array state of one search node:

* ``deg``      -- per-vertex count of uncovered incident edges (uint8/16/32);
                  0 means the vertex is out of the residual graph.
* ``off/nbr``  -- static CSR adjacency of the (reduced) graph; an edge is
                  uncovered exactly when both endpoints are live.
* ``out/pos``  -- an int32 scratch array and write cursor; kernels that force
                  vertices into the cover append their ids there so callers
                  can reconstruct covers without a second code path.
* ``scratch``  -- an int32 work array of at least num_vertices entries.

Rule sweeps snapshot their qualifying vertices first and then apply with
revalidation, so a vertex that starts qualifying mid-sweep waits for the
next sweep.  A node is owned by a single worker thread while these run, so
plain writes are safe.
"""

from __future__ import annotations

import numpy as np


def remove_vertex(deg, off, nbr, v):
    """Drop v from the residual graph; return the number of edges removed."""
    d = int(deg[v])
    if d == 0:
        return 0
    remaining = d
    for i in range(int(off[v]), int(off[v + 1])):
        u = int(nbr[i])
        if deg[u] > 0:
            deg[u] -= 1
            remaining -= 1
            if remaining == 0:
                break
    deg[v] = 0
    return d


def remove_neighbors(deg, off, nbr, v, out, pos):
    """Force every live neighbor of v into the cover, isolating v.

    Returns (neighbors_removed, edges_removed, new_pos).
    """
    removed = 0
    edges = 0
    for i in range(int(off[v]), int(off[v + 1])):
        if deg[v] == 0:
            break
        u = int(nbr[i])
        if deg[u] > 0:
            edges += remove_vertex(deg, off, nbr, u)
            out[pos] = u
            pos += 1
            removed += 1
    return removed, edges, pos


def _adjacent(off, nbr, u, w):
    # binary search for w in u's sorted static neighbor slice
    lo = int(off[u])
    hi = int(off[u + 1]) - 1
    while lo <= hi:
        mid = (lo + hi) // 2
        x = int(nbr[mid])
        if x == w:
            return True
        if x < w:
            lo = mid + 1
        else:
            hi = mid - 1
    return False


def degree_one_pass(deg, off, nbr, lo, hi, out, pos, scratch):
    """One sweep of the degree-one rule.

    A vertex with exactly one uncovered edge never needs to be in the
    cover; its neighbor is forced instead.  Returns
    (applications, forced, edges_removed, new_pos).
    """
    ncand = 0
    for v in range(lo, hi + 1):
        if deg[v] == 1:
            scratch[ncand] = v
            ncand += 1
    applied = 0
    forced = 0
    edges = 0
    for k in range(ncand):
        v = int(scratch[k])
        if deg[v] != 1:
            continue
        for i in range(int(off[v]), int(off[v + 1])):
            u = int(nbr[i])
            if deg[u] > 0:
                edges += remove_vertex(deg, off, nbr, u)
                out[pos] = u
                pos += 1
                forced += 1
                applied += 1
                break
    return applied, forced, edges, pos


def degree_two_triangle_pass(deg, off, nbr, lo, hi, out, pos, scratch):
    """One sweep of the triangle rule for degree-2 vertices.

    If v has exactly two uncovered edges and its live neighbors are
    adjacent, some minimum cover takes both neighbors; force them and v
    drops out isolated.  Returns (applications, forced, edges_removed,
    new_pos).
    """
    ncand = 0
    for v in range(lo, hi + 1):
        if deg[v] == 2:
            scratch[ncand] = v
            ncand += 1
    applied = 0
    forced = 0
    edges = 0
    for k in range(ncand):
        v = int(scratch[k])
        if deg[v] != 2:
            continue
        u = -1
        w = -1
        for i in range(int(off[v]), int(off[v + 1])):
            x = int(nbr[i])
            if deg[x] > 0:
                if u < 0:
                    u = x
                else:
                    w = x
                    break
        if w < 0:
            continue
        if _adjacent(off, nbr, u, w):
            edges += remove_vertex(deg, off, nbr, u)
            out[pos] = u
            pos += 1
            if deg[w] > 0:
                edges += remove_vertex(deg, off, nbr, w)
            out[pos] = w
            pos += 1
            forced += 2
            applied += 1
    return applied, forced, edges, pos


def high_degree_pass(deg, off, nbr, lo, hi, budget, out, pos, scratch):
    """One sweep forcing live vertices whose degree exceeds the budget.

    A vertex with more uncovered edges than the residual cover may still
    spend must itself be in the cover.  The budget shrinks by one per
    vertex forced within the sweep.  Returns
    (applications, forced, edges_removed, new_pos).
    """
    ncand = 0
    for v in range(lo, hi + 1):
        d = int(deg[v])
        if d > 0 and d > budget:
            scratch[ncand] = v
            ncand += 1
    applied = 0
    forced = 0
    edges = 0
    for k in range(ncand):
        v = int(scratch[k])
        d = int(deg[v])
        if d > 0 and d > budget:
            edges += remove_vertex(deg, off, nbr, v)
            out[pos] = v
            pos += 1
            forced += 1
            applied += 1
            budget -= 1
    return applied, forced, edges, pos


def reduce_fixpoint(deg, off, nbr, lo, hi, budget, out, pos, scratch):
    """Run the three lightweight rules to a joint fixpoint.

    Cheapest first: degree-one to exhaustion, then one triangle sweep, then
    one high-degree sweep, repeated until a full cycle applies nothing.  The
    effective high-degree budget is the entry budget minus every vertex
    forced so far, whatever rule forced it.  Returns
    (forced, d1_apps, d2t_apps, hd_apps, edges_removed, lo, hi, new_pos).
    """
    forced = 0
    d1 = 0
    d2t = 0
    hd = 0
    edges = 0
    while True:
        cycle = 0
        while True:
            ap, f, e, pos = degree_one_pass(deg, off, nbr, lo, hi, out, pos, scratch)
            d1 += ap
            forced += f
            edges += e
            cycle += ap
            if ap == 0:
                break
        ap, f, e, pos = degree_two_triangle_pass(deg, off, nbr, lo, hi, out, pos, scratch)
        d2t += ap
        forced += f
        edges += e
        cycle += ap
        ap, f, e, pos = high_degree_pass(
            deg, off, nbr, lo, hi, budget - forced, out, pos, scratch
        )
        hd += ap
        forced += f
        edges += e
        cycle += ap
        if cycle == 0:
            break
    lo, hi = recompute_bounds(deg, lo, hi)
    return forced, d1, d2t, hd, edges, lo, hi, pos


def recompute_bounds(deg, lo, hi):
    """Tighten [lo, hi] to the first/last live vertex; empty -> (n, 0)."""
    if lo <= hi:
        window = deg[lo : hi + 1]
        nz = np.nonzero(window)[0]
        if nz.size:
            return lo + int(nz[0]), lo + int(nz[-1])
    # max(..., 1) keeps lo > hi even for a zero-length degree array
    return max(len(deg), 1), 0


def select_max_degree(deg, lo, hi):
    """Lowest-index live vertex of maximum degree in [lo, hi], or -1."""
    if lo > hi:
        return -1
    window = deg[lo : hi + 1]
    i = int(np.argmax(window))
    if window[i] == 0:
        return -1
    return lo + i


def count_live(deg, lo, hi):
    if lo > hi:
        return 0
    return int(np.count_nonzero(deg[lo : hi + 1]))


def bfs_component(deg, off, nbr, visited, stamp, queue, source):
    """Collect the connected component of a live source vertex.

    Marks members with ``stamp`` in ``visited`` and writes them to
    ``queue[0:size]`` in BFS order.  Returns
    (size, degree_sum, min_degree, max_degree, min_vertex, max_vertex).
    """
    if deg[source] == 0:
        raise ValueError("bfs_component: source vertex is not live")
    visited[source] = stamp
    queue[0] = source
    head = 0
    tail = 1
    sumdeg = 0
    mindeg = int(deg[source])
    maxdeg = 0
    vmin = source
    vmax = source
    while head < tail:
        v = int(queue[head])
        head += 1
        d = int(deg[v])
        sumdeg += d
        if d < mindeg:
            mindeg = d
        if d > maxdeg:
            maxdeg = d
        if v < vmin:
            vmin = v
        if v > vmax:
            vmax = v
        for i in range(int(off[v]), int(off[v + 1])):
            u = int(nbr[i])
            if deg[u] > 0 and visited[u] != stamp:
                visited[u] = stamp
                queue[tail] = u
                tail += 1
    return tail, sumdeg, mindeg, maxdeg, vmin, vmax


def next_live_unvisited(deg, visited, stamp, start, hi):
    """First live vertex in [start, hi] not carrying ``stamp``, or -1."""
    for v in range(start, hi + 1):
        if deg[v] > 0 and visited[v] != stamp:
            return v
    return -1


def greedy_cover(deg, off, nbr, lo, hi, out, pos):
    """Greedy cover size: repeatedly take a max-degree vertex.

    Destroys ``deg`` (callers pass a scratch copy); members go to ``out``.
    Returns (size, new_pos).
    """
    size = 0
    while True:
        v = select_max_degree(deg, lo, hi)
        if v < 0:
            break
        remove_vertex(deg, off, nbr, v)
        out[pos] = v
        pos += 1
        size += 1
        lo, hi = recompute_bounds(deg, lo, hi)
        if lo > hi:
            break
    return size, pos
