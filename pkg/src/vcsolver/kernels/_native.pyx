# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the pure-Python kernels.

Behaviour is bit-for-bit identical to ``vcsolver.kernels.pure``: same
candidate snapshots, same tie-breaks, same counters.  The parity tests
compare the two backends on random graphs at every degree width.
"""

from libc.stdint cimport int32_t, int64_t, uint8_t, uint16_t, uint32_t

ctypedef fused deg_t:
    uint8_t
    uint16_t
    uint32_t


cdef inline long long _remove_vertex(deg_t[::1] deg, int64_t[::1] off,
                                     int32_t[::1] nbr, long long v) noexcept:
    cdef long long d = deg[v]
    cdef long long remaining, i, u
    if d == 0:
        return 0
    remaining = d
    for i in range(off[v], off[v + 1]):
        u = nbr[i]
        if deg[u] > 0:
            deg[u] -= 1
            remaining -= 1
            if remaining == 0:
                break
    deg[v] = 0
    return d


cdef inline bint _adjacent(int64_t[::1] off, int32_t[::1] nbr,
                           long long u, long long w) noexcept:
    cdef long long lo = off[u]
    cdef long long hi = off[u + 1] - 1
    cdef long long mid, x
    while lo <= hi:
        mid = (lo + hi) // 2
        x = nbr[mid]
        if x == w:
            return True
        if x < w:
            lo = mid + 1
        else:
            hi = mid - 1
    return False


cdef inline (long long, long long) _recompute_bounds(deg_t[::1] deg,
                                                     long long lo,
                                                     long long hi) noexcept:
    cdef long long v, first, last
    first = -1
    last = -1
    if lo <= hi:
        for v in range(lo, hi + 1):
            if deg[v] > 0:
                if first < 0:
                    first = v
                last = v
    if first >= 0:
        return first, last
    first = deg.shape[0]
    if first < 1:
        first = 1
    return first, 0


cdef inline long long _select_max_degree(deg_t[::1] deg, long long lo,
                                         long long hi) noexcept:
    cdef long long v, best_v
    cdef long long best_d = 0
    best_v = -1
    if lo > hi:
        return -1
    for v in range(lo, hi + 1):
        if deg[v] > best_d:
            best_d = deg[v]
            best_v = v
    return best_v


def remove_vertex(deg_t[::1] deg, int64_t[::1] off, int32_t[::1] nbr,
                  long long v):
    return _remove_vertex(deg, off, nbr, v)


def remove_neighbors(deg_t[::1] deg, int64_t[::1] off, int32_t[::1] nbr,
                     long long v, int32_t[::1] out, long long pos):
    cdef long long vv = v
    cdef long long p = pos
    cdef long long removed = 0
    cdef long long edges = 0
    cdef long long i, u
    for i in range(off[vv], off[vv + 1]):
        if deg[vv] == 0:
            break
        u = nbr[i]
        if deg[u] > 0:
            edges += _remove_vertex(deg, off, nbr, u)
            out[p] = <int32_t> u
            p += 1
            removed += 1
    return removed, edges, p


cdef (long long, long long, long long, long long) _degree_one_pass(
        deg_t[::1] deg, int64_t[::1] off, int32_t[::1] nbr,
        long long lo, long long hi, int32_t[::1] out, long long pos,
        int32_t[::1] scratch) noexcept:
    cdef long long ncand = 0
    cdef long long v, i, u, k
    cdef long long applied = 0
    cdef long long forced = 0
    cdef long long edges = 0
    for v in range(lo, hi + 1):
        if deg[v] == 1:
            scratch[ncand] = <int32_t> v
            ncand += 1
    for k in range(ncand):
        v = scratch[k]
        if deg[v] != 1:
            continue
        for i in range(off[v], off[v + 1]):
            u = nbr[i]
            if deg[u] > 0:
                edges += _remove_vertex(deg, off, nbr, u)
                out[pos] = <int32_t> u
                pos += 1
                forced += 1
                applied += 1
                break
    return applied, forced, edges, pos


def degree_one_pass(deg_t[::1] deg, int64_t[::1] off, int32_t[::1] nbr,
                    long long lo, long long hi, int32_t[::1] out,
                    long long pos, int32_t[::1] scratch):
    return _degree_one_pass(deg, off, nbr, lo, hi, out, pos, scratch)


cdef (long long, long long, long long, long long) _degree_two_triangle_pass(
        deg_t[::1] deg, int64_t[::1] off, int32_t[::1] nbr,
        long long lo, long long hi, int32_t[::1] out, long long pos,
        int32_t[::1] scratch) noexcept:
    cdef long long ncand = 0
    cdef long long v, i, x, u, w, k
    cdef long long applied = 0
    cdef long long forced = 0
    cdef long long edges = 0
    for v in range(lo, hi + 1):
        if deg[v] == 2:
            scratch[ncand] = <int32_t> v
            ncand += 1
    for k in range(ncand):
        v = scratch[k]
        if deg[v] != 2:
            continue
        u = -1
        w = -1
        for i in range(off[v], off[v + 1]):
            x = nbr[i]
            if deg[x] > 0:
                if u < 0:
                    u = x
                else:
                    w = x
                    break
        if w < 0:
            continue
        if _adjacent(off, nbr, u, w):
            edges += _remove_vertex(deg, off, nbr, u)
            out[pos] = <int32_t> u
            pos += 1
            if deg[w] > 0:
                edges += _remove_vertex(deg, off, nbr, w)
            out[pos] = <int32_t> w
            pos += 1
            forced += 2
            applied += 1
    return applied, forced, edges, pos


def degree_two_triangle_pass(deg_t[::1] deg, int64_t[::1] off,
                             int32_t[::1] nbr, long long lo, long long hi,
                             int32_t[::1] out, long long pos,
                             int32_t[::1] scratch):
    return _degree_two_triangle_pass(deg, off, nbr, lo, hi, out, pos, scratch)


cdef (long long, long long, long long, long long) _high_degree_pass(
        deg_t[::1] deg, int64_t[::1] off, int32_t[::1] nbr,
        long long lo, long long hi, long long budget, int32_t[::1] out,
        long long pos, int32_t[::1] scratch) noexcept:
    cdef long long ncand = 0
    cdef long long v, d, k
    cdef long long applied = 0
    cdef long long forced = 0
    cdef long long edges = 0
    for v in range(lo, hi + 1):
        d = deg[v]
        if d > 0 and d > budget:
            scratch[ncand] = <int32_t> v
            ncand += 1
    for k in range(ncand):
        v = scratch[k]
        d = deg[v]
        if d > 0 and d > budget:
            edges += _remove_vertex(deg, off, nbr, v)
            out[pos] = <int32_t> v
            pos += 1
            forced += 1
            applied += 1
            budget -= 1
    return applied, forced, edges, pos


def high_degree_pass(deg_t[::1] deg, int64_t[::1] off, int32_t[::1] nbr,
                     long long lo, long long hi, long long budget,
                     int32_t[::1] out, long long pos,
                     int32_t[::1] scratch):
    return _high_degree_pass(deg, off, nbr, lo, hi, budget, out, pos, scratch)


def reduce_fixpoint(deg_t[::1] deg, int64_t[::1] off, int32_t[::1] nbr,
                    long long lo, long long hi, long long budget,
                    int32_t[::1] out, long long pos,
                    int32_t[::1] scratch):
    cdef long long c_lo = lo
    cdef long long c_hi = hi
    cdef long long c_budget = budget
    cdef long long c_pos = pos
    cdef long long forced = 0
    cdef long long d1 = 0
    cdef long long d2t = 0
    cdef long long hd = 0
    cdef long long edges = 0
    cdef long long cycle, ap, f, e
    while True:
        cycle = 0
        while True:
            ap, f, e, c_pos = _degree_one_pass(
                deg, off, nbr, c_lo, c_hi, out, c_pos, scratch
            )
            d1 += ap
            forced += f
            edges += e
            cycle += ap
            if ap == 0:
                break
        ap, f, e, c_pos = _degree_two_triangle_pass(
            deg, off, nbr, c_lo, c_hi, out, c_pos, scratch
        )
        d2t += ap
        forced += f
        edges += e
        cycle += ap
        ap, f, e, c_pos = _high_degree_pass(
            deg, off, nbr, c_lo, c_hi, c_budget - forced, out, c_pos, scratch
        )
        hd += ap
        forced += f
        edges += e
        cycle += ap
        if cycle == 0:
            break
    c_lo, c_hi = _recompute_bounds(deg, c_lo, c_hi)
    return forced, d1, d2t, hd, edges, c_lo, c_hi, c_pos


def recompute_bounds(deg_t[::1] deg, long long lo, long long hi):
    cdef long long a, b
    a, b = _recompute_bounds(deg, lo, hi)
    return a, b


def select_max_degree(deg_t[::1] deg, long long lo, long long hi):
    return _select_max_degree(deg, lo, hi)


def count_live(deg_t[::1] deg, long long lo, long long hi):
    cdef long long c_lo = lo
    cdef long long c_hi = hi
    cdef long long v
    cdef long long count = 0
    if c_lo > c_hi:
        return 0
    for v in range(c_lo, c_hi + 1):
        if deg[v] > 0:
            count += 1
    return count


def bfs_component(deg_t[::1] deg, int64_t[::1] off, int32_t[::1] nbr,
                  int32_t[::1] visited, int32_t stamp, int32_t[::1] queue,
                  long long source):
    cdef long long src = source
    cdef int32_t c_stamp = stamp
    cdef long long head, tail, v, d, i, u
    cdef long long sumdeg = 0
    cdef long long mindeg, maxdeg, vmin, vmax
    if deg[src] == 0:
        raise ValueError("bfs_component: source vertex is not live")
    visited[src] = c_stamp
    queue[0] = <int32_t> src
    head = 0
    tail = 1
    mindeg = deg[src]
    maxdeg = 0
    vmin = src
    vmax = src
    while head < tail:
        v = queue[head]
        head += 1
        d = deg[v]
        sumdeg += d
        if d < mindeg:
            mindeg = d
        if d > maxdeg:
            maxdeg = d
        if v < vmin:
            vmin = v
        if v > vmax:
            vmax = v
        for i in range(off[v], off[v + 1]):
            u = nbr[i]
            if deg[u] > 0 and visited[u] != c_stamp:
                visited[u] = c_stamp
                queue[tail] = <int32_t> u
                tail += 1
    return tail, sumdeg, mindeg, maxdeg, vmin, vmax


def next_live_unvisited(deg_t[::1] deg, int32_t[::1] visited,
                        int32_t stamp, long long start, long long hi):
    cdef long long c_start = start
    cdef long long c_hi = hi
    cdef int32_t c_stamp = stamp
    cdef long long v
    for v in range(c_start, c_hi + 1):
        if deg[v] > 0 and visited[v] != c_stamp:
            return v
    return -1


def greedy_cover(deg_t[::1] deg, int64_t[::1] off, int32_t[::1] nbr,
                 long long lo, long long hi, int32_t[::1] out,
                 long long pos):
    cdef long long c_lo = lo
    cdef long long c_hi = hi
    cdef long long c_pos = pos
    cdef long long size = 0
    cdef long long v
    while True:
        v = _select_max_degree(deg, c_lo, c_hi)
        if v < 0:
            break
        _remove_vertex(deg, off, nbr, v)
        out[c_pos] = <int32_t> v
        c_pos += 1
        size += 1
        c_lo, c_hi = _recompute_bounds(deg, c_lo, c_hi)
        if c_lo > c_hi:
            break
    return size, c_pos
