"""Exhaustive branch-and-prune search over edge colorings of K_m.

The search assigns colors edge by edge and prunes a branch as soon as

* the new edge closes a monochromatic C_L (only cycles through that edge
  are examined),
* with ``gallai_only``, the new edge completes a rainbow triangle,
* the color would break first-use order (the first edge is color 1 and
  color c+1 only appears after color c).

Work is split on the colorings of the first ``split_depth`` edges; each
prefix subtree is explored independently and results are merged in prefix
order, so outcomes and node counts do not depend on the number of workers.
"""

from __future__ import annotations

import json
import logging
import multiprocessing
import sys
import time
from concurrent.futures import ProcessPoolExecutor, as_completed
from dataclasses import dataclass, field

from ._bits import balls, bfs_layers, distances, find_path, is_bipartite_layers, iter_bits, popcount
from .coloring import EdgeColoring, coloring_from_dict, coloring_to_dict
from .cycles import find_monochromatic_cycle
from .errors import FormatError, ParameterError
from .structure import find_rainbow_triangle

log = logging.getLogger(__name__)

REPORT_FORMAT = "search-report-v1"

VERIFIED = "verified"
COUNTEREXAMPLE = "counterexample"
BUDGET = "budget"

DEFAULT_SPLIT_DEPTH = 6
_CHECK_EVERY = 1024


@dataclass(frozen=True)
class Budget:
    nodes: int = 200_000_000
    seconds: float = 3600.0

    def __post_init__(self):
        if self.nodes <= 0:
            raise ParameterError(f"node budget must be positive, got {self.nodes}")
        if not self.seconds > 0:
            raise ParameterError(f"time budget must be positive, got {self.seconds}")


@dataclass(frozen=True)
class SearchProblem:
    m: int
    L: int
    k: int
    gallai_only: bool = False
    budget: Budget = field(default_factory=Budget)

    def __post_init__(self):
        if self.m < 3:
            raise ParameterError(f"m must be >= 3, got {self.m}")
        if self.L < 3:
            raise ParameterError(f"cycle length must be >= 3, got {self.L}")
        if self.k < 1:
            raise ParameterError(f"k must be >= 1, got {self.k}")


@dataclass
class SearchReport:
    outcome: str
    nodes: int
    prunes: dict
    elapsed: float
    deterministic: bool = True
    counterexample: EdgeColoring | None = None

    def to_dict(self) -> dict:
        return {
            "format": REPORT_FORMAT,
            "outcome": self.outcome,
            "nodes": self.nodes,
            "elapsed_ms": int(round(self.elapsed * 1000)),
            "counterexample": None if self.counterexample is None else coloring_to_dict(self.counterexample),
            "prunes": {key: self.prunes.get(key, 0) for key in ("cycle", "rainbow", "symmetry")},
        }

    def dumps(self) -> str:
        return json.dumps(self.to_dict(), separators=(",", ":")) + "\n"


def report_from_dict(obj) -> SearchReport:
    if not isinstance(obj, dict) or obj.get("format") != REPORT_FORMAT:
        raise FormatError(f"expected an object with format {REPORT_FORMAT!r}")
    if obj.get("outcome") not in (VERIFIED, COUNTEREXAMPLE, BUDGET):
        raise FormatError(f"unknown outcome {obj.get('outcome')!r}")
    cx = obj.get("counterexample")
    return SearchReport(
        outcome=obj["outcome"],
        nodes=int(obj.get("nodes", 0)),
        prunes=dict(obj.get("prunes", {})),
        elapsed=obj.get("elapsed_ms", 0) / 1000,
        counterexample=None if cx is None else coloring_from_dict(cx),
    )


def edge_order(m: int, order: str = "lex") -> list[tuple[int, int]]:
    """``lex``: (0,1), (0,2), ...; ``vertex``: all edges into vertex j before vertex j+1."""
    if order == "lex":
        return [(i, j) for i in range(m) for j in range(i + 1, m)]
    if order == "vertex":
        return [(i, j) for j in range(m) for i in range(j)]
    raise ParameterError(f"unknown edge order {order!r}")


def closes_cycle(adj, u: int, v: int, L: int, full: int) -> bool:
    """Would adding edge uv to ``adj`` create a cycle of length L through it?"""
    layers = bfs_layers(adj, v, full)
    within = balls(layers)
    comp = within[-1]
    if not (comp >> u) & 1 or popcount(comp) < L:
        return False
    du = 0
    while not (within[du] >> u) & 1:
        du += 1
    if du > L - 1:
        return False
    if (L - 1 - du) & 1 and is_bipartite_layers(adj, layers):
        return False
    return find_path(adj, u, v, L - 1, comp, within=within) is not None


def _component(adj, src: int) -> int:
    comp = frontier = 1 << src
    while frontier:
        nxt = 0
        for w in iter_bits(frontier):
            nxt |= adj[w]
        frontier = nxt & ~comp
        comp |= frontier
    return comp


def _hunt_score(adj, u: int, v: int, L: int):
    """Value-ordering key favouring colors whose class stays small or bipartite."""
    cu = _component(adj, u)
    if (cu >> v) & 1:
        size = popcount(cu)
        if size < L:
            return (0, size)
        layers = bfs_layers(adj, u, cu)
        dist = distances(layers)
        return (2 if dist[v] & 1 else 3, size)
    size = popcount(cu) + popcount(_component(adj, v))
    return (1, size) if size < L else (2, size)


class _Exhausted(Exception):
    pass


class _Aborted(Exception):
    pass


class _Engine:
    def __init__(self, m, L, k, gallai_only, edges, hunt=False, node_limit=None,
                 deadline=None, should_abort=None):
        self.m, self.L, self.k = m, L, k
        self.gallai_only = gallai_only
        self.edges = edges
        self.hunt = hunt
        self.full = (1 << m) - 1
        self.adj = [[0] * m for _ in range(k + 1)]
        self.assign = [0] * len(edges)
        self.nodes = 0
        self.prunes = {"cycle": 0, "rainbow": 0, "symmetry": 0}
        self.node_limit = node_limit
        self.deadline = deadline
        self.should_abort = should_abort
        self.prefixes: list[tuple[tuple[int, ...], int]] = []

    def apply(self, idx: int, c: int) -> None:
        u, v = self.edges[idx]
        self.adj[c][u] |= 1 << v
        self.adj[c][v] |= 1 << u
        self.assign[idx] = c

    def undo(self, idx: int, c: int) -> None:
        u, v = self.edges[idx]
        self.adj[c][u] &= ~(1 << v)
        self.adj[c][v] &= ~(1 << u)
        self.assign[idx] = 0

    def _rainbow(self, u: int, v: int, c: int) -> bool:
        adj = self.adj
        colored_v = 0
        for col in range(1, self.k + 1):
            colored_v |= adj[col][v]
        for c1 in range(1, self.k + 1):
            if c1 == c:
                continue
            if adj[c1][u] & colored_v & ~adj[c][v] & ~adj[c1][v]:
                return True
        return False

    def _tick(self) -> None:
        self.nodes += 1
        if self.node_limit is not None and self.nodes > self.node_limit:
            raise _Exhausted
        if self.nodes % _CHECK_EVERY == 0:
            if self.deadline is not None and time.monotonic() > self.deadline:
                raise _Exhausted
            if self.should_abort is not None and self.should_abort():
                raise _Aborted

    def dfs(self, idx: int, used: int, stop_at: int | None = None) -> bool:
        """Depth-first search from edge ``idx``; True once a complete good coloring is found.

        With ``stop_at`` set, partial colorings of that many edges are
        recorded as prefixes instead of being expanded.
        """
        self._tick()
        if idx == len(self.edges):
            return True
        if stop_at is not None and idx == stop_at:
            self.prefixes.append((tuple(self.assign[:idx]), used))
            return False
        u, v = self.edges[idx]
        top = min(used + 1, self.k)
        self.prunes["symmetry"] += self.k - top
        choices = range(1, top + 1)
        if self.hunt:
            choices = sorted(choices, key=lambda c: (_hunt_score(self.adj[c], u, v, self.L), c))
        for c in choices:
            if self.gallai_only and self._rainbow(u, v, c):
                self.prunes["rainbow"] += 1
                continue
            if closes_cycle(self.adj[c], u, v, self.L, self.full):
                self.prunes["cycle"] += 1
                continue
            self.apply(idx, c)
            if self.dfs(idx + 1, max(used, c), stop_at):
                return True
            self.undo(idx, c)
        return False

    def coloring(self) -> EdgeColoring:
        cols = {}
        for (u, v), c in zip(self.edges, self.assign):
            cols[(u, v)] = c
        return EdgeColoring.from_function(self.m, self.k, lambda i, j: cols[(i, j)])


# Workers ------------------------------------------------------------------

_STOP = None


def _init_worker(stop):
    global _STOP
    _STOP = stop


def _run_subtree(args):
    """Explore one prefix subtree.  Returns (index, status, nodes, prunes, colors)."""
    (index, prefix, used, m, L, k, gallai_only, order, hunt, node_limit, deadline) = args
    stop = _STOP

    def should_abort():
        return stop is not None and stop.value < index

    eng = _Engine(m, L, k, gallai_only, edge_order(m, order), hunt=hunt,
                  node_limit=node_limit, deadline=deadline, should_abort=should_abort)
    for idx, c in enumerate(prefix):
        eng.apply(idx, c)
    status = "done"
    try:
        if eng.dfs(len(prefix), used):
            status = "found"
            if stop is not None:
                with stop.get_lock():
                    stop.value = min(stop.value, index)
    except _Exhausted:
        status = "exhausted"
    except _Aborted:
        status = "aborted"
    colors = tuple(eng.assign) if status == "found" else None
    # the subtree root was already counted during prefix generation
    return index, status, eng.nodes - 1, eng.prunes, colors


def _certify(g: EdgeColoring, L: int, gallai_only: bool) -> None:
    hit = find_monochromatic_cycle(g, L)
    if hit is not None:
        raise AssertionError(f"search produced a coloring with a monochromatic C_{L}: {hit}")
    if gallai_only and find_rainbow_triangle(g) is not None:
        raise AssertionError("search produced a coloring with a rainbow triangle")


def run_search(pb: SearchProblem, jobs: int = 1, split_depth: int | None = None,
               deterministic: bool = True, order: str = "lex", hunt: bool = False) -> SearchReport:
    """Shared driver behind :func:`verify_upper` and :func:`find_good_coloring`."""
    if jobs < 1:
        raise ParameterError(f"jobs must be >= 1, got {jobs}")
    start = time.monotonic()
    deadline = start + pb.budget.seconds
    edges = edge_order(pb.m, order)
    depth = DEFAULT_SPLIT_DEPTH if split_depth is None else split_depth
    if depth < 1:
        raise ParameterError(f"split depth must be >= 1, got {depth}")
    depth = min(depth, len(edges))
    # one frame per edge plus the path search below it
    sys.setrecursionlimit(max(sys.getrecursionlimit(), len(edges) + pb.L + 200))

    def finish(outcome, nodes, prunes, colors=None):
        cx = None
        if colors is not None:
            eng = _Engine(pb.m, pb.L, pb.k, pb.gallai_only, edges)
            eng.assign = list(colors)
            cx = eng.coloring()
            _certify(cx, pb.L, pb.gallai_only)
        return SearchReport(outcome, nodes, prunes, time.monotonic() - start, deterministic, cx)

    root = _Engine(pb.m, pb.L, pb.k, pb.gallai_only, edges, hunt=hunt,
                   node_limit=pb.budget.nodes, deadline=deadline)
    try:
        found = root.dfs(0, 0, stop_at=depth)
    except _Exhausted:
        return finish(BUDGET, root.nodes, root.prunes)
    if found:
        return finish(COUNTEREXAMPLE, root.nodes, root.prunes, tuple(root.assign))

    prefixes = root.prefixes
    log.debug("split at depth %d into %d prefixes", depth, len(prefixes))
    total = root.nodes
    prunes = dict(root.prunes)
    tasks = [
        (i, pre, used, pb.m, pb.L, pb.k, pb.gallai_only, order, hunt, pb.budget.nodes, deadline)
        for i, (pre, used) in enumerate(prefixes)
    ]

    def merge(result):
        nonlocal total
        _, status, nodes, sub_prunes, colors = result
        total += nodes
        for key, val in sub_prunes.items():
            prunes[key] += val
        if status == "found":
            return finish(COUNTEREXAMPLE, total, prunes, colors)
        if status == "exhausted" or total > pb.budget.nodes:
            return finish(BUDGET, total, prunes)
        return None

    if jobs == 1 or len(tasks) <= 1:
        _init_worker(None)
        for t in tasks:
            rep = merge(_run_subtree(t))
            if rep is not None:
                return rep
        return finish(VERIFIED, total, prunes)

    stop = multiprocessing.Value("q", len(tasks))
    with ProcessPoolExecutor(max_workers=jobs, initializer=_init_worker, initargs=(stop,)) as pool:
        futures = [pool.submit(_run_subtree, t) for t in tasks]
        try:
            if deterministic:
                for fut in futures:
                    rep = merge(fut.result())
                    if rep is not None:
                        return rep
            else:
                for fut in as_completed(futures):
                    result = fut.result()
                    if result[1] == "aborted":
                        continue
                    rep = merge(result)
                    if rep is not None:
                        return rep
        finally:
            with stop.get_lock():
                stop.value = -1
            for fut in futures:
                fut.cancel()
    return finish(VERIFIED, total, prunes)


def verify_upper(pb: SearchProblem, jobs: int = 1, split_depth: int | None = None,
                 deterministic: bool = True) -> SearchReport:
    """Decide whether every (Gallai) k-coloring of K_m has a monochromatic C_L.

    Outcome ``verified`` is a proof by exhaustion; ``counterexample`` carries a
    re-certified good coloring; ``budget`` makes no claim.
    """
    return run_search(pb, jobs=jobs, split_depth=split_depth, deterministic=deterministic)


def find_good_coloring(pb: SearchProblem) -> EdgeColoring | None:
    """Hunt for a coloring of K_m with no monochromatic C_L (Gallai if requested).

    Uses vertex-by-vertex edge order and a value ordering that keeps color
    classes small or bipartite; this only changes the order of exploration.
    Returns None when the space is exhausted or the budget runs out.
    """
    rep = run_search(pb, jobs=1, order="vertex", hunt=True)
    return rep.counterexample
