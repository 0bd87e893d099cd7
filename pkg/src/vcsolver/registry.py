"""Completion tracking for branches that split into connected components.

When a tree node's residual graph falls apart, each component is solved
under its own child entry while a parent entry accumulates their best cover
sizes.  The last finisher anywhere below an entry performs that entry's
post-processing, so completion cascades upward through arbitrary nesting
without any worker blocking on another.

On the CPU the per-field atomics become one small mutex per entry (fields
are read and written only under it), and the fixed arena becomes a list
grown under a separate allocation lock.  Entries are addressed by index;
an entry is never revived once its live count reaches zero.
"""

from __future__ import annotations

import threading


class RegistryProtocolError(RuntimeError):
    """A live counter went negative or an entry was used after completion."""


class ChildEntry:
    """Scope of one search (the root, or one component of a split).

    ``best`` is the smallest cover size known for the scope's subgraph;
    ``achieved`` says whether a concrete cover of that size is known to
    exist (initial all-but-one bounds and found leaves are achieved, pure
    budget caps are not).  ``live_nodes`` counts unfinished tree nodes in
    the scope.
    """

    __slots__ = ("best", "achieved", "live_nodes", "parent", "lock")

    def __init__(self, best: int, achieved: bool, parent: int | None):
        self.best = best
        self.achieved = achieved
        self.live_nodes = 1
        self.parent = parent
        self.lock = threading.Lock()


class ParentEntry:
    """Accumulator for one multi-component split.

    ``sum`` starts at the splitting node's solution size and absorbs each
    component's final best; ``live_comps`` counts unfinished components
    plus one self-count held while component discovery is still running.
    ``children`` records the component entries for diagnostics and for
    early-termination propagation; ``folded_total`` is the part of the sum
    contributed by components solved in place, which create no entries.
    """

    __slots__ = (
        "sum",
        "sum_achieved",
        "live_comps",
        "ancestor",
        "initial_sum",
        "folded_total",
        "children",
        "discovery_done",
        "lock",
    )

    def __init__(self, initial_sum: int, ancestor: int):
        self.sum = initial_sum
        self.sum_achieved = True
        self.live_comps = 1
        self.ancestor = ancestor
        self.initial_sum = initial_sum
        self.folded_total = 0
        self.children: list[int] = []
        self.discovery_done = False
        self.lock = threading.Lock()


class Registry:
    def __init__(self):
        self.entries: list[ChildEntry | ParentEntry] = []
        self._alloc_lock = threading.Lock()

    def __len__(self) -> int:
        return len(self.entries)

    def entry(self, idx: int):
        return self.entries[idx]

    # -- allocation ---------------------------------------------------------

    def new_child_entry(
        self, best_init: int, parent: int | None = None, achieved: bool = True
    ) -> int:
        if best_init < 1:
            raise ValueError(f"child entry needs best >= 1, got {best_init}")
        entry = ChildEntry(best_init, achieved, parent)
        with self._alloc_lock:
            idx = len(self.entries)
            self.entries.append(entry)
        if parent is not None:
            p = self.entries[parent]
            with p.lock:
                p.children.append(idx)
        return idx

    def new_parent_entry(self, initial_sum: int, ancestor: int) -> int:
        if initial_sum < 0:
            raise ValueError("initial sum must be non-negative")
        entry = ParentEntry(initial_sum, ancestor)
        with self._alloc_lock:
            idx = len(self.entries)
            self.entries.append(entry)
        return idx

    # -- child entry operations --------------------------------------------

    def atomic_min_best(self, idx: int, candidate: int, achieved: bool) -> int:
        """Lower ``best`` to candidate if smaller; returns the prior value.

        A candidate equal to the current best still upgrades the achieved
        flag: finding a concrete cover of the bound's size is news.
        """
        e = self.entries[idx]
        with e.lock:
            prior = e.best
            if candidate < prior:
                e.best = candidate
                e.achieved = achieved
            elif candidate == prior and achieved:
                e.achieved = True
            return prior

    def best_snapshot(self, idx: int) -> tuple[int, bool]:
        e = self.entries[idx]
        with e.lock:
            return e.best, e.achieved

    def inc_live_nodes(self, idx: int) -> int:
        e = self.entries[idx]
        with e.lock:
            if e.live_nodes < 1:
                raise RegistryProtocolError(
                    f"entry {idx}: live-node increment on a completed entry"
                )
            e.live_nodes += 1
            return e.live_nodes

    def dec_live_nodes(self, idx: int) -> int:
        e = self.entries[idx]
        with e.lock:
            e.live_nodes -= 1
            if e.live_nodes < 0:
                raise RegistryProtocolError(
                    f"entry {idx}: live-node count went negative"
                )
            return e.live_nodes

    # -- parent entry operations -------------------------------------------

    def add_to_sum(self, idx: int, delta: int, achieved: bool, folded: bool = False) -> int:
        e = self.entries[idx]
        with e.lock:
            e.sum += delta
            if folded:
                e.folded_total += delta
            if not achieved:
                e.sum_achieved = False
            return e.sum

    def inc_live_comps(self, idx: int) -> int:
        e = self.entries[idx]
        with e.lock:
            if e.live_comps < 1:
                raise RegistryProtocolError(
                    f"entry {idx}: component increment on a finalized entry"
                )
            e.live_comps += 1
            return e.live_comps

    def dec_live_comps(self, idx: int) -> int:
        e = self.entries[idx]
        with e.lock:
            e.live_comps -= 1
            if e.live_comps < 0:
                raise RegistryProtocolError(
                    f"entry {idx}: component count went negative"
                )
            return e.live_comps

    def mark_discovery_done(self, idx: int) -> None:
        e = self.entries[idx]
        with e.lock:
            e.discovery_done = True

    # -- diagnostics --------------------------------------------------------

    def quiescence_violations(self) -> list[str]:
        """Entries still holding live counts; empty after a clean run."""
        out = []
        for i, e in enumerate(self.entries):
            if isinstance(e, ChildEntry):
                if e.live_nodes != 0:
                    out.append(f"child entry {i}: live_nodes == {e.live_nodes}")
            else:
                if e.live_comps != 0:
                    out.append(f"parent entry {i}: live_comps == {e.live_comps}")
        return out

    def conservation_violations(self) -> list[str]:
        """Parents whose sum disagrees with initial + folded + children bests."""
        out = []
        for i, e in enumerate(self.entries):
            if isinstance(e, ParentEntry):
                expected = e.initial_sum + e.folded_total + sum(
                    self.entries[c].best for c in e.children
                )
                if e.sum != expected:
                    out.append(
                        f"parent entry {i}: sum {e.sum} != {expected} "
                        f"(initial {e.initial_sum} + folded {e.folded_total} "
                        f"+ children {[self.entries[c].best for c in e.children]})"
                    )
        return out
