"""Fixed-length cycle detection and constructive odd-cycle builders."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Sequence

from ._bits import balls, bfs_layers, find_path, is_bipartite_layers, iter_bits, popcount
from .coloring import ColorSubgraph, EdgeColoring, color_subgraph
from .errors import ConstructionError, FormatError, ParameterError

WITNESS_FORMAT = "cycle-witness-v1"

EXTRA_VERTEX = "extra-vertex"
INTERNAL_BLUE_EDGE = "internal-blue-edge"


@dataclass(frozen=True)
class CycleWitness:
    vertices: tuple[int, ...]
    color: int | None = None

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))

    def __len__(self):
        return len(self.vertices)

    def edges(self):
        vs = self.vertices
        return [(vs[i], vs[(i + 1) % len(vs)]) for i in range(len(vs))]


@dataclass(frozen=True)
class MultipartiteSpec:
    sizes: tuple[int, ...]
    n: int

    def __post_init__(self):
        object.__setattr__(self, "sizes", tuple(self.sizes))
        if self.n < 1:
            raise ParameterError(f"n must be >= 1, got {self.n}")
        if len(self.sizes) < 3:
            raise ParameterError(f"need at least 3 parts, got {len(self.sizes)}")
        if any(s < 1 for s in self.sizes):
            raise ParameterError(f"part sizes must be positive: {self.sizes}")
        if any(s > self.n for s in self.sizes):
            raise ParameterError(f"every part size must be <= n={self.n}: {self.sizes}")
        if sum(self.sizes) < 2 * self.n + 1:
            raise ParameterError(f"part sizes sum to {sum(self.sizes)} < 2n+1 = {2 * self.n + 1}")


def _cycle_through_anchor(adj, anchor: int, L: int, allowed: int):
    """Cycle of length L through ``anchor`` using only vertices in ``allowed``."""
    layers = bfs_layers(adj, anchor, allowed)
    within = balls(layers)
    comp = within[-1]
    if popcount(comp) < L:
        return None
    if L & 1 and is_bipartite_layers(adj, layers):
        return None
    dead: set = set()
    for w in iter_bits(adj[anchor] & comp):
        path = find_path(adj, w, anchor, L - 1, comp, within=within, dead=dead)
        if path is not None:
            # path runs w .. anchor; rotate so the anchor comes first
            return [anchor] + path[:-1]
    return None


def has_cycle_of_length(h: ColorSubgraph, L: int) -> CycleWitness | None:
    """Exact search for a cycle with exactly L vertices.

    Anchors are tried in increasing order and each anchor is the smallest
    vertex of its cycle, so the first hit is the lowest-anchor witness.
    """
    if L < 3:
        raise ParameterError(f"cycle length must be >= 3, got {L}")
    if L > h.m:
        return None
    adj = list(h.adj)
    full = (1 << h.m) - 1
    for anchor in range(h.m - L + 1):
        allowed = full & ~((1 << anchor) - 1)
        if popcount(adj[anchor] & allowed) < 2:
            continue
        cyc = _cycle_through_anchor(adj, anchor, L, allowed)
        if cyc is not None:
            return CycleWitness(tuple(cyc), h.color)
    return None


def find_monochromatic_cycle(g: EdgeColoring, L: int):
    """First color (in 1..k order) containing a C_L, with its witness; None if no color does."""
    if L < 3:
        raise ParameterError(f"cycle length must be >= 3, got {L}")
    for c in range(1, g.k + 1):
        w = has_cycle_of_length(color_subgraph(g, c), L)
        if w is not None:
            return c, w
    return None


def verify_cycle_witness(host, w: CycleWitness) -> list[str]:
    """List every way ``w`` fails to be a cycle of ``host``; [] means valid.

    ``host`` is an EdgeColoring (all pairs are edges; colors checked when
    ``w.color`` is set) or a ColorSubgraph.
    """
    out = []
    vs = list(w.vertices)
    m = host.m
    if len(vs) < 3:
        out.append(f"length {len(vs)} < 3")
    seen = {}
    for pos, v in enumerate(vs):
        if not isinstance(v, int) or not 0 <= v < m:
            out.append(f"position {pos}: vertex {v!r} outside 0..{m - 1}")
        elif v in seen:
            out.append(f"position {pos}: vertex {v} repeats position {seen[v]}")
        else:
            seen[v] = pos
    if isinstance(host, ColorSubgraph) and w.color is not None and host.color is not None \
            and host.color != w.color:
        out.append(f"witness color {w.color} differs from subgraph color {host.color}")
    for pos in range(len(vs)):
        u, v = vs[pos], vs[(pos + 1) % len(vs)]
        if not (isinstance(u, int) and isinstance(v, int) and 0 <= u < m and 0 <= v < m):
            continue
        if u == v:
            out.append(f"edge {pos}: self-loop at {u}")
            continue
        if isinstance(host, EdgeColoring):
            if w.color is not None and host.color(u, v) != w.color:
                out.append(f"edge {pos} ({u}, {v}): color {host.color(u, v)} != {w.color}")
        elif not host.has_edge(u, v):
            out.append(f"edge {pos} ({u}, {v}): not an edge of the host")
    return out


# Constructive builders ----------------------------------------------------

def complete_multipartite(sizes: Sequence[int]) -> ColorSubgraph:
    """Complete multipartite graph; part i occupies a contiguous vertex range."""
    part = []
    for idx, s in enumerate(sizes):
        part.extend([idx] * s)
    m = len(part)
    adj = [0] * m
    for u in range(m):
        for v in range(u + 1, m):
            if part[u] != part[v]:
                adj[u] |= 1 << v
                adj[v] |= 1 << u
    return ColorSubgraph(m, tuple(adj))


def _trim_sizes(sizes: Sequence[int], target: int) -> list[int]:
    """Shrink the largest part (lowest index on ties) one vertex at a time down to ``target``."""
    trimmed = list(sizes)
    while sum(trimmed) > target:
        nonempty = sum(1 for s in trimmed if s > 0)
        order = sorted(range(len(trimmed)), key=lambda i: (-trimmed[i], i))
        pick = order[0]
        if trimmed[pick] == 1 and nonempty <= 3:
            pick = order[1]
        trimmed[pick] -= 1
    return trimmed


def dirac_hamiltonian_cycle(adj: Sequence[int], vertices: Sequence[int]) -> list[int]:
    """Hamiltonian cycle of the subgraph induced on ``vertices``.

    Rotation-extension construction: extend a path greedily at both ends,
    close it into a cycle using a crossing pair of edges, then reopen the
    cycle at a vertex with an outside neighbour.  Succeeds whenever the
    minimum degree is at least half the order.
    """
    allowed = 0
    for v in vertices:
        allowed |= 1 << v
    order = popcount(allowed)
    if order < 3:
        raise ParameterError("need at least 3 vertices for a cycle")
    start = min(vertices)
    path = [start]
    on_path = 1 << start
    while True:
        # extend at both ends while possible
        grew = True
        while grew:
            grew = False
            for end in (-1, 0):
                out = adj[path[end]] & allowed & ~on_path
                if out:
                    y = (out & -out).bit_length() - 1
                    if end == -1:
                        path.append(y)
                    else:
                        path.insert(0, y)
                    on_path |= 1 << y
                    grew = True
        first, last = path[0], path[-1]
        if (adj[last] >> first) & 1:
            cycle = path
        else:
            for i in range(len(path) - 1):
                if (adj[last] >> path[i]) & 1 and (adj[first] >> path[i + 1]) & 1:
                    cycle = path[: i + 1] + path[i + 1:][::-1]
                    break
            else:
                raise ConstructionError("no crossing edges; minimum-degree condition fails")
        if len(cycle) == order:
            return cycle
        for idx, c in enumerate(cycle):
            out = adj[c] & allowed & ~on_path
            if out:
                y = (out & -out).bit_length() - 1
                path = [y] + cycle[idx:] + cycle[:idx]
                on_path |= 1 << y
                break
        else:
            raise ConstructionError("graph is disconnected; minimum-degree condition fails")


def multipartite_odd_cycle(spec: MultipartiteSpec) -> CycleWitness:
    """A C_{2n+1} in the complete multipartite graph with the given part sizes.

    Keeps the first ``trimmed[i]`` vertices of each part so the kept set has
    exactly 2n+1 vertices, every part at most n, hence minimum degree at
    least n+1; a Hamiltonian cycle of the kept set is the answer.
    """
    n = spec.n
    host = complete_multipartite(spec.sizes)
    trimmed = _trim_sizes(spec.sizes, 2 * n + 1)
    kept = []
    offset = 0
    for size, keep in zip(spec.sizes, trimmed):
        kept.extend(range(offset, offset + keep))
        offset += size
    cycle = dirac_hamiltonian_cycle(host.adj, kept)
    w = CycleWitness(tuple(cycle))
    bad = verify_cycle_witness(host, w)
    if bad or len(cycle) != 2 * n + 1:
        raise ConstructionError(f"multipartite cycle construction failed: {bad}")
    return w


def weave_host(size_y: int, size_z: int, mode: str) -> ColorSubgraph:
    """Host graph for :func:`weave_join_cycle`.

    Y is ``0..size_y-1`` and Z follows it.  In extra-vertex mode the extra
    vertex x is ``size_y + size_z`` and is joined to all of Y and Z; in
    internal-blue-edge mode Z's first two vertices are adjacent.
    """
    if mode not in (EXTRA_VERTEX, INTERNAL_BLUE_EDGE):
        raise ParameterError(f"unknown weave mode {mode!r}")
    m = size_y + size_z + (1 if mode == EXTRA_VERTEX else 0)
    edges = [(y, size_y + z) for y in range(size_y) for z in range(size_z)]
    if mode == EXTRA_VERTEX:
        x = size_y + size_z
        edges += [(x, v) for v in range(size_y + size_z)]
    elif size_z >= 2:
        edges.append((size_y, size_y + 1))
    return ColorSubgraph.from_edges(m, edges)


def weave_join_cycle(size_y: int, size_z: int, n: int, mode: str) -> CycleWitness:
    """The explicit alternating C_{2n+1} through a blue join of Y and Z.

    extra-vertex:       y1, x, z1, y2, z2, ..., yn, zn
    internal-blue-edge: y1, z1, z2, y2, z3, ..., yn, z(n+1)
    Vertex numbering follows :func:`weave_host`.  Swap the size arguments
    for the mirrored orientation.
    """
    if n < 1:
        raise ParameterError(f"n must be >= 1, got {n}")
    y = list(range(size_y))
    z = [size_y + i for i in range(size_z)]
    if mode == EXTRA_VERTEX:
        if size_y < n or size_z < n:
            raise ParameterError(f"extra-vertex mode needs |Y| >= n and |Z| >= n (n={n})")
        x = size_y + size_z
        seq = [y[0], x, z[0]]
        for i in range(1, n):
            seq += [y[i], z[i]]
    elif mode == INTERNAL_BLUE_EDGE:
        if size_y < n or size_z < n + 1:
            raise ParameterError(f"internal-blue-edge mode needs |Y| >= n and |Z| >= n+1 (n={n})")
        seq = [y[0], z[0], z[1]]
        for i in range(1, n):
            seq += [y[i], z[i + 1]]
    else:
        raise ParameterError(f"unknown weave mode {mode!r}")
    return CycleWitness(tuple(seq))


# JSON ---------------------------------------------------------------------

def witness_to_dict(w: CycleWitness) -> dict:
    return {"format": WITNESS_FORMAT, "color": w.color, "vertices": list(w.vertices)}


def dumps_witness(w: CycleWitness) -> str:
    return json.dumps(witness_to_dict(w), separators=(",", ":")) + "\n"


def witness_from_dict(obj) -> CycleWitness:
    if not isinstance(obj, dict) or obj.get("format") != WITNESS_FORMAT:
        raise FormatError(f"expected an object with format {WITNESS_FORMAT!r}")
    color = obj.get("color")
    if color is not None and (isinstance(color, bool) or not isinstance(color, int)):
        raise FormatError(f"'color' must be an integer or null, got {color!r}")
    vs = obj.get("vertices")
    if not isinstance(vs, list) or any(isinstance(v, bool) or not isinstance(v, int) for v in vs):
        raise FormatError("'vertices' must be an array of integers")
    return CycleWitness(tuple(vs), color)


def loads_witness(text: str) -> CycleWitness:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    return witness_from_dict(obj)
