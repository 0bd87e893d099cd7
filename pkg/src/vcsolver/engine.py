"""Parallel branch-and-reduce search for minimum vertex cover.

The search tree is explored by worker threads, each owning a private stack
of tree nodes plus a shared worklist used for load balancing.  Every node
carries its own degree array, so workers never synchronize on graph state;
coordination happens only through the completion registry and the shared
best bounds stored there.

``solve`` wires the phases together: root reduction, the threaded search,
and an optional second pass that reconstructs one concrete minimum cover.
"""

from __future__ import annotations

import threading
import time
from collections import deque
from dataclasses import dataclass, field
import numpy as np

from . import kernels
from .graph import SearchNode, StaticGraph, remove_neighbors, remove_vertex
from .preprocess import Preprocessed, greedy_bound, root_reduce, select_width
from .reductions import (
    ComponentKind,
    classify_special_component,
    reduce_to_fixpoint,
    solve_special_component,
)
from .registry import ChildEntry, Registry

RULE_KEYS = (
    "degree_one",
    "degree_two_triangle",
    "high_degree",
    "crown",
    "clique_component",
    "cycle_component",
)

_IDLE_SLEEP_MIN = 2e-5
_IDLE_SLEEP_MAX = 1e-3


@dataclass
class SolverConfig:
    """Everything that shapes one solve run."""

    mode: str = "mvc"  # "mvc" or "pvc"
    k: int | None = None  # pvc budget
    workers: int = 1
    use_components: bool = True
    use_root_reduce: bool = True
    use_bounds: bool = True
    use_crown: bool = True
    load_balance: bool = True
    deterministic: bool = False
    width: int | None = None
    record_cover: bool = False
    timeout: float | None = None
    worklist_threshold: int | None = None
    _disable_pruning: bool = False  # test hook: turn the stopping rule off

    def validate(self) -> None:
        if self.mode not in ("mvc", "pvc"):
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.mode == "pvc":
            if self.k is None or self.k < 0:
                raise ValueError("pvc mode needs a non-negative k")
        if self.workers < 1:
            raise ValueError("workers must be >= 1")
        if self.timeout is not None and self.timeout <= 0:
            raise ValueError("timeout must be positive")
        if self.worklist_threshold is not None and self.worklist_threshold < 1:
            raise ValueError("worklist threshold must be >= 1")


@dataclass
class Stats:
    tree_nodes_visited: int = 0
    component_branches: int = 0
    components_per_branch: dict[int, int] = field(default_factory=dict)
    rule_counts: dict[str, int] = field(default_factory=dict)
    root_vertices_before: int = 0
    root_vertices_after: int = 0
    degree_width: int = 0
    max_stack_depth: int = 0
    worklist_pushes: int = 0
    worklist_pops: int = 0
    phase_seconds: dict[str, float] = field(default_factory=dict)

    def as_dict(self) -> dict:
        return {
            "tree_nodes_visited": self.tree_nodes_visited,
            "component_branches": self.component_branches,
            "components_per_branch": dict(sorted(self.components_per_branch.items())),
            "rule_counts": dict(self.rule_counts),
            "root_vertices_before": self.root_vertices_before,
            "root_vertices_after": self.root_vertices_after,
            "degree_width": self.degree_width,
            "max_stack_depth": self.max_stack_depth,
            "worklist_pushes": self.worklist_pushes,
            "worklist_pops": self.worklist_pops,
            "phase_seconds": dict(self.phase_seconds),
        }


@dataclass
class SolveResult:
    cover_size: int | None
    found: bool
    exact: bool
    cover: list[int] | None
    stats: Stats
    mode: str
    k: int | None = None
    registry: Registry | None = None
    root_index: int | None = None
    forced: list[int] = field(default_factory=list)


class _WorkerState:
    """Private scratch buffers and counters for one worker thread."""

    __slots__ = (
        "forced_buf",
        "scratch",
        "visited",
        "queue",
        "stamp",
        "stack",
        "nodes",
        "comp_branches",
        "comp_hist",
        "rules",
        "max_depth",
        "pushes",
        "pops",
        "error",
    )

    def __init__(self, n: int):
        cap = max(n, 1)
        self.forced_buf = np.empty(cap, dtype=np.int32)
        self.scratch = np.empty(cap, dtype=np.int32)
        self.visited = np.zeros(cap, dtype=np.int32)
        self.queue = np.empty(cap, dtype=np.int32)
        self.stamp = 0
        self.stack: list[SearchNode] = []
        self.nodes = 0
        self.comp_branches = 0
        self.comp_hist: dict[int, int] = {}
        self.rules = dict.fromkeys(RULE_KEYS, 0)
        self.max_depth = 0
        self.pushes = 0
        self.pops = 0
        self.error: BaseException | None = None


class _Engine:
    """One threaded search over a reduced graph."""

    def __init__(
        self,
        g: StaticGraph,
        config: SolverConfig,
        registry: Registry,
        width: int,
        best_init: int,
        achieved_init: bool,
        k_red: int | None,
        capture_witness: bool = False,
    ):
        self.g = g
        self.n = g.num_vertices
        self.cfg = config
        self.reg = registry
        self.k_red = k_red
        self.capture = capture_witness
        self.workers = 1 if config.deterministic else config.workers
        self.share = config.load_balance and not config.deterministic
        self.threshold = config.worklist_threshold or self.workers * 2
        self.root_index = registry.new_child_entry(best_init, None, achieved_init)
        root = SearchNode.for_graph(
            g, width, scope=self.root_index, track_inclusion=capture_witness
        )
        self.states = [_WorkerState(self.n) for _ in range(self.workers)]
        self.states[0].stack.append(root)
        self.states[0].max_depth = 1
        self.worklist: deque[SearchNode] = deque()
        self._idle = [False] * self.workers
        self._stop = False
        self._found = False
        self._timed_out = False
        self._witness: list[int] | None = None
        self._deadline: float | None = None

    # -- lifecycle ----------------------------------------------------------

    def run(self) -> None:
        if self.cfg.timeout is not None:
            self._deadline = time.monotonic() + self.cfg.timeout
        if self.workers == 1:
            self._worker_loop(0)
        else:
            threads = [
                threading.Thread(
                    target=self._worker_loop, args=(wid,), name=f"vc-worker-{wid}"
                )
                for wid in range(self.workers)
            ]
            for t in threads:
                t.start()
            for t in threads:
                t.join()
        # anything still parked on the worklist was abandoned by the stop
        while True:
            try:
                node = self.worklist.popleft()
            except IndexError:
                break
            self._finish(node)
        for ws in self.states:
            if ws.error is not None:
                raise ws.error

    def _worker_loop(self, wid: int) -> None:
        ws = self.states[wid]
        try:
            self._drive(ws, wid)
        except BaseException as exc:
            ws.error = exc
            self._stop = True
            return
        # drain mode: release registry slots for work abandoned by the stop
        while ws.stack:
            self._finish(ws.stack.pop())
        while True:
            try:
                node = self.worklist.popleft()
            except IndexError:
                break
            self._finish(node)

    def _drive(self, ws: _WorkerState, wid: int) -> None:
        sleep_s = _IDLE_SLEEP_MIN
        while True:
            if self._stop:
                return
            if self._deadline is not None and time.monotonic() > self._deadline:
                self._timed_out = True
                self._stop = True
                return
            node = None
            if ws.stack:
                node = ws.stack.pop()
            else:
                try:
                    node = self.worklist.popleft()
                    ws.pops += 1
                except IndexError:
                    node = None
            if node is None:
                self._idle[wid] = True
                if not self.worklist and all(self._idle):
                    return
                time.sleep(sleep_s)
                sleep_s = min(sleep_s * 2.0, _IDLE_SLEEP_MAX)
                self._idle[wid] = False
                continue
            self._idle[wid] = False
            sleep_s = _IDLE_SLEEP_MIN
            self._process_node(node, ws)

    # -- node processing ----------------------------------------------------

    def _process_node(self, node: SearchNode, ws: _WorkerState) -> None:
        ws.nodes += 1
        best_s, _ = self.reg.best_snapshot(node.scope)
        budget = best_s - node.solution_size - 1
        outcome, _ = reduce_to_fixpoint(
            node, self.g, budget, ws.forced_buf, 0, ws.scratch
        )
        ws.rules["degree_one"] += outcome.degree_one
        ws.rules["degree_two_triangle"] += outcome.degree_two_triangle
        ws.rules["high_degree"] += outcome.high_degree
        if not self.cfg.use_bounds and self.n:
            node.lo, node.hi = 0, self.n - 1

        if not self.cfg._disable_pruning:
            if node.solution_size >= best_s:
                self._finish(node)
                return
            remaining = best_s - node.solution_size - 1
            if node.edges_remaining > remaining * remaining:
                self._finish(node)
                return

        if node.edges_remaining == 0:
            if (
                self.capture
                and self._witness is None
                and self.k_red is not None
                and node.solution_size <= self.k_red
            ):
                self._witness = [int(v) for v in np.flatnonzero(node.inclusion)]
            self._submit(node.scope, node.solution_size, True)
            self._finish(node)
            return

        if self.cfg.use_components and self._try_component_split(node, best_s, ws):
            return

        v = kernels.select_max_degree(node.degrees, node.lo, node.hi)
        if v < 0:
            raise RuntimeError("edges remaining but no live vertex in window")
        self._branch_on_vertex(node, v, ws)

    def _branch_on_vertex(self, node: SearchNode, v: int, ws: _WorkerState) -> None:
        # the node's live slot transfers to the include child; the exclude
        # child needs a slot of its own before anyone can see it
        self.reg.inc_live_nodes(node.scope)
        exclude = node.copy()
        remove_neighbors(exclude, self.g, v, ws.forced_buf, 0)
        exclude.depth = node.depth + 1
        self._offload_or_push(exclude, ws)

        remove_vertex(node, self.g, v, into_cover=True)
        node.depth += 1
        ws.stack.append(node)
        if len(ws.stack) > ws.max_depth:
            ws.max_depth = len(ws.stack)

    def _try_component_split(
        self, node: SearchNode, best_s: int, ws: _WorkerState
    ) -> bool:
        """Detect a disconnected residual and dispatch components eagerly.

        The first BFS covering every live vertex means a single component;
        the caller branches on a vertex instead.  Otherwise each component
        is handed off (or solved in place when special) the moment its BFS
        finishes, so other workers can start on it while discovery of the
        rest continues.
        """
        deg = node.degrees
        live_total = kernels.count_live(deg, node.lo, node.hi)
        ws.stamp += 1
        stamp = ws.stamp
        src = kernels.next_live_unvisited(deg, ws.visited, stamp, node.lo, node.hi)
        comp = kernels.bfs_component(
            deg, self.g.offsets, self.g.neighbors, ws.visited, stamp, ws.queue, src
        )
        if comp[0] == live_total:
            return False

        reg = self.reg
        ancestor = node.scope
        ws.comp_branches += 1
        # slot on the ancestor for the parent entry's eventual finalization
        reg.inc_live_nodes(ancestor)
        parent = reg.new_parent_entry(node.solution_size, ancestor)
        running = node.solution_size
        count = 0
        while True:
            count += 1
            size, degree_sum, mindeg, maxdeg, vmin, vmax = comp
            kind = classify_special_component(size, mindeg, maxdeg)
            if kind is not ComponentKind.GENERAL:
                value = solve_special_component(kind, size)
                reg.add_to_sum(parent, value, achieved=True, folded=True)
                key = (
                    "clique_component"
                    if kind is ComponentKind.CLIQUE
                    else "cycle_component"
                )
                ws.rules[key] += 1
                running += value
            else:
                # budget from dispatch-time knowledge; all-but-one is always
                # attainable for a connected component, a tighter cap is not
                init = max(1, min(best_s - running, size - 1))
                achieved = init == size - 1
                child_idx = reg.new_child_entry(init, parent, achieved)
                degrees = np.zeros_like(deg)
                members = ws.queue[:size]
                degrees[members] = deg[members]
                if self.cfg.use_bounds:
                    lo, hi = vmin, vmax
                else:
                    lo, hi = 0, self.n - 1
                child = SearchNode(
                    degrees, 0, degree_sum // 2, lo, hi, child_idx, node.depth + 1
                )
                reg.inc_live_comps(parent)
                self._offload_or_push(child, ws)
            src = kernels.next_live_unvisited(
                deg, ws.visited, stamp, src + 1, node.hi
            )
            if src < 0:
                break
            comp = kernels.bfs_component(
                deg, self.g.offsets, self.g.neighbors, ws.visited, stamp, ws.queue,
                src,
            )
        ws.comp_hist[count] = ws.comp_hist.get(count, 0) + 1
        reg.mark_discovery_done(parent)
        if reg.dec_live_comps(parent) == 0:
            # every component finished (or folded) before discovery closed
            self._cascade(parent)
        self._finish(node)
        return True

    def _offload_or_push(self, node: SearchNode, ws: _WorkerState) -> None:
        if self.share and len(self.worklist) < self.threshold:
            self.worklist.append(node)
            ws.pushes += 1
            return
        ws.stack.append(node)
        if len(ws.stack) > ws.max_depth:
            ws.max_depth = len(ws.stack)

    # -- completion protocol ------------------------------------------------

    def _finish(self, node: SearchNode) -> None:
        if self.reg.dec_live_nodes(node.scope) == 0:
            self._cascade(node.scope)

    def _cascade(self, idx: int) -> None:
        """Run completion upward from a quiesced entry; last finisher only."""
        reg = self.reg
        while True:
            entry = reg.entry(idx)
            if isinstance(entry, ChildEntry):
                if entry.parent is None:
                    # root scope finished: the whole search is over
                    self._stop = True
                    return
                best, achieved = reg.best_snapshot(idx)
                reg.add_to_sum(entry.parent, best, achieved)
                if reg.dec_live_comps(entry.parent) != 0:
                    return
                idx = entry.parent
            else:
                with entry.lock:
                    total = entry.sum
                    achieved = entry.sum_achieved
                    ancestor = entry.ancestor
                self._submit(ancestor, total, achieved)
                if reg.dec_live_nodes(ancestor) != 0:
                    return
                idx = ancestor

    def _submit(self, idx: int, value: int, achieved: bool) -> None:
        self.reg.atomic_min_best(idx, value, achieved)
        if self.k_red is None:
            return
        if idx != self.root_index:
            self._pvc_propagate(idx)
        best, _ = self.reg.best_snapshot(self.root_index)
        if best <= self.k_red:
            self._found = True
            self._stop = True

    def _pvc_propagate(self, idx: int) -> None:
        """Walk ancestors combining finished sums with live component bests.

        Every term folded in is a concrete cover size for its component, so
        each ancestor total is a real cover size for that scope; the walk
        stops at the first scope whose split is still discovering components
        or carries an unachieved term.
        """
        reg = self.reg
        while True:
            entry = reg.entry(idx)
            parent_idx = entry.parent
            if parent_idx is None:
                return
            p = reg.entry(parent_idx)
            with p.lock:
                if not p.discovery_done:
                    return
                total = p.sum
                ok = p.sum_achieved
                kids = list(p.children)
            if not ok:
                return
            for c in kids:
                ce = reg.entry(c)
                with ce.lock:
                    if ce.live_nodes > 0:
                        if not ce.achieved:
                            return
                        total += ce.best
            reg.atomic_min_best(p.ancestor, total, True)
            idx = p.ancestor


def _merge_worker_stats(stats: Stats, engine: _Engine) -> None:
    for ws in engine.states:
        stats.tree_nodes_visited += ws.nodes
        stats.component_branches += ws.comp_branches
        for key, val in ws.comp_hist.items():
            stats.components_per_branch[key] = (
                stats.components_per_branch.get(key, 0) + val
            )
        for key, val in ws.rules.items():
            stats.rule_counts[key] = stats.rule_counts.get(key, 0) + val
        if ws.max_depth > stats.max_stack_depth:
            stats.max_stack_depth = ws.max_depth
        stats.worklist_pushes += ws.pushes
        stats.worklist_pops += ws.pops


def _witness_cover(rg: StaticGraph, width: int, target: int) -> list[int]:
    """Find one concrete cover of size <= target on the reduced graph.

    Runs a deterministic single-worker bounded search with inclusion
    tracking on; component splitting stays off because folded components
    would leave no record of which vertices they chose.
    """
    greedy, members = greedy_bound(rg, members=True)
    if greedy <= target:
        return members
    cfg = SolverConfig(
        mode="pvc",
        k=target,
        workers=1,
        use_components=False,
        use_root_reduce=False,
        use_crown=False,
        load_balance=False,
        deterministic=True,
    )
    engine = _Engine(
        rg,
        cfg,
        Registry(),
        width,
        best_init=target + 1,
        achieved_init=False,
        k_red=target,
        capture_witness=True,
    )
    engine.run()
    if engine._witness is None:
        raise RuntimeError("cover reconstruction failed to reach the target size")
    return engine._witness


def _assemble_cover(g: StaticGraph, pre: Preprocessed, local: list[int]) -> list[int]:
    """Map a reduced-graph cover back to original ids and verify it."""
    cover = sorted(set(pre.forced) | {int(pre.vertex_map[v]) for v in local})
    covered = np.zeros(g.num_vertices, dtype=bool)
    covered[cover] = True
    heads = np.repeat(np.arange(g.num_vertices), np.diff(g.offsets))
    if not np.all(covered[heads] | covered[g.neighbors]):
        raise RuntimeError("reconstructed cover misses an edge")
    return cover


def solve(g: StaticGraph, config: SolverConfig | None = None) -> SolveResult:
    """Solve minimum vertex cover (or its budgeted decision form) on ``g``."""
    cfg = config if config is not None else SolverConfig()
    cfg.validate()
    stats = Stats()
    stats.rule_counts = dict.fromkeys(RULE_KEYS, 0)
    stats.root_vertices_before = g.num_vertices
    stats.phase_seconds = {"root_reduce": 0.0, "search": 0.0, "reconstruct": 0.0}

    t0 = time.perf_counter()
    bound = cfg.k if cfg.mode == "pvc" else None
    pre = root_reduce(
        g,
        enabled=cfg.use_root_reduce,
        crown=cfg.use_crown,
        bound=bound,
        width_override=cfg.width,
    )
    stats.phase_seconds["root_reduce"] = time.perf_counter() - t0
    for key, val in pre.rule_counts.items():
        stats.rule_counts[key] = stats.rule_counts.get(key, 0) + val
    stats.root_vertices_after = pre.graph.num_vertices
    stats.degree_width = pre.width
    rg = pre.graph

    result = SolveResult(
        cover_size=None,
        found=False,
        exact=True,
        cover=None,
        stats=stats,
        mode=cfg.mode,
        k=cfg.k,
        forced=list(pre.forced),
    )

    if cfg.mode == "pvc" and pre.forced_count > cfg.k:
        # the forced set alone exceeds the budget: no qualifying cover exists
        return result

    if rg.num_edges == 0:
        result.found = True
        result.cover_size = pre.forced_count
        if cfg.record_cover:
            result.cover = _assemble_cover(g, pre, [])
            result.cover_size = len(result.cover)
        return result

    k_red = cfg.k - pre.forced_count if cfg.mode == "pvc" else None
    greedy_reduced = pre.greedy_reduced
    if cfg.mode == "pvc":
        if greedy_reduced <= k_red:
            # the greedy cover already fits the budget; no search needed
            result.found = True
            result.cover_size = pre.forced_count + greedy_reduced
            if cfg.record_cover:
                _, members = greedy_bound(rg, members=True)
                result.cover = _assemble_cover(g, pre, members)
                result.cover_size = len(result.cover)
            return result
        best_init = min(greedy_reduced, k_red + 1)
        achieved_init = greedy_reduced <= k_red + 1
    else:
        cap = pre.greedy_original - pre.forced_count
        best_init = max(1, min(greedy_reduced, cap))
        achieved_init = greedy_reduced <= cap

    registry = Registry()
    engine = _Engine(
        rg, cfg, registry, pre.width, best_init, achieved_init, k_red
    )
    result.registry = registry
    result.root_index = engine.root_index
    t1 = time.perf_counter()
    engine.run()
    stats.phase_seconds["search"] = time.perf_counter() - t1
    _merge_worker_stats(stats, engine)

    best, _ = registry.best_snapshot(engine.root_index)
    timed_out = engine._timed_out
    if cfg.mode == "mvc":
        result.found = True
        result.cover_size = pre.forced_count + best
        result.exact = not timed_out
        have_target = True
    else:
        found = engine._found or best <= k_red
        result.found = found
        result.exact = found or not timed_out
        result.cover_size = pre.forced_count + best if found else None
        have_target = found

    if cfg.record_cover and have_target and result.exact:
        t2 = time.perf_counter()
        local = _witness_cover(rg, pre.width, best)
        result.cover = _assemble_cover(g, pre, local)
        result.cover_size = len(result.cover)
        stats.phase_seconds["reconstruct"] = time.perf_counter() - t2
    return result
