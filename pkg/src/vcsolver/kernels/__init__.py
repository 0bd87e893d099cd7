"""Hot-loop kernels with two interchangeable backends.

The compiled Cython extension (``_native``) is used when it was built; the
pure-Python mirror (``pure``) is the fallback.  Set ``VCSOLVER_KERNELS`` to
``pure`` or ``native`` to force one (``native`` then raises if the extension
is missing).  ``BACKEND`` names the active choice.
"""

import os

_requested = os.environ.get("VCSOLVER_KERNELS", "").strip().lower()

if _requested == "pure":
    from vcsolver.kernels import pure as _impl

    BACKEND = "pure"
elif _requested in ("", "native"):
    try:
        from vcsolver.kernels import _native as _impl  # type: ignore[attr-defined]

        BACKEND = "native"
    except ImportError:
        if _requested == "native":
            raise
        from vcsolver.kernels import pure as _impl

        BACKEND = "pure"
else:
    raise ValueError(
        f"VCSOLVER_KERNELS must be 'pure' or 'native', got {_requested!r}"
    )

remove_vertex = _impl.remove_vertex
remove_neighbors = _impl.remove_neighbors
degree_one_pass = _impl.degree_one_pass
degree_two_triangle_pass = _impl.degree_two_triangle_pass
high_degree_pass = _impl.high_degree_pass
reduce_fixpoint = _impl.reduce_fixpoint
recompute_bounds = _impl.recompute_bounds
select_max_degree = _impl.select_max_degree
count_live = _impl.count_live
bfs_component = _impl.bfs_component
next_live_unvisited = _impl.next_live_unvisited
greedy_cover = _impl.greedy_cover

__all__ = [
    "BACKEND",
    "remove_vertex",
    "remove_neighbors",
    "degree_one_pass",
    "degree_two_triangle_pass",
    "high_degree_pass",
    "reduce_fixpoint",
    "recompute_bounds",
    "select_max_degree",
    "count_live",
    "bfs_component",
    "next_live_unvisited",
    "greedy_cover",
]
