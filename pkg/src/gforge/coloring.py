"""Edge colorings of complete graphs.

An :class:`EdgeColoring` of ``K_m`` stores one color id per unordered pair in
an upper-triangular, row-major tuple.  Colors are ``1..k``; ``0`` is never
stored here (the search module uses it as "unassigned" in its own state).
"""

from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from typing import Iterator, Sequence

from ._bits import iter_bits, popcount
from .errors import FormatError, ParameterError

COLORING_FORMAT = "gallai-coloring-v1"


def pair_index(m: int, i: int, j: int) -> int:
    """Index of the pair {i, j} in the upper-triangle row-major layout."""
    if i > j:
        i, j = j, i
    return i * m - i * (i + 1) // 2 + (j - i - 1)


def num_pairs(m: int) -> int:
    return m * (m - 1) // 2


@dataclass(frozen=True)
class EdgeColoring:
    m: int
    k: int
    colors: tuple[int, ...]

    def __post_init__(self):
        if self.m < 1:
            raise ParameterError(f"vertex count must be >= 1, got {self.m}")
        if self.k < 1:
            raise ParameterError(f"color count must be >= 1, got {self.k}")
        if not isinstance(self.colors, tuple):
            object.__setattr__(self, "colors", tuple(self.colors))
        if len(self.colors) != num_pairs(self.m):
            raise ParameterError(
                f"expected {num_pairs(self.m)} pair colors for m={self.m}, got {len(self.colors)}")
        for idx, c in enumerate(self.colors):
            if not 1 <= c <= self.k:
                raise ParameterError(f"color {c} at pair index {idx} outside [1, {self.k}]")

    def color(self, i: int, j: int) -> int:
        if i == j:
            raise ParameterError(f"no self-loop at vertex {i}")
        return self.colors[pair_index(self.m, i, j)]

    def pairs(self) -> Iterator[tuple[int, int, int]]:
        """Yield ``(i, j, color)`` for all i < j in storage order."""
        m = self.m
        it = iter(self.colors)
        for i in range(m):
            for j in range(i + 1, m):
                yield i, j, next(it)

    def used_colors(self) -> set[int]:
        return set(self.colors)

    def rows(self) -> list[list[int]]:
        """Dense symmetric matrix of colors, 0 on the diagonal."""
        m = self.m
        mat = [[0] * m for _ in range(m)]
        for i, j, c in self.pairs():
            mat[i][j] = c
            mat[j][i] = c
        return mat

    def masks(self) -> list[list[int]]:
        """``masks()[c][v]`` is the bitmask of c-colored neighbours of v (index 0 unused)."""
        out = [[0] * self.m for _ in range(self.k + 1)]
        for i, j, c in self.pairs():
            out[c][i] |= 1 << j
            out[c][j] |= 1 << i
        return out

    def induced(self, vertices: Sequence[int]) -> "EdgeColoring":
        """Coloring induced on ``vertices`` (relabelled 0..len-1 in the given order)."""
        vs = list(vertices)
        cols = [self.color(vs[a], vs[b]) for a in range(len(vs)) for b in range(a + 1, len(vs))]
        return EdgeColoring(len(vs), self.k, tuple(cols))

    @classmethod
    def from_matrix(cls, k: int, mat: Sequence[Sequence[int]]) -> "EdgeColoring":
        m = len(mat)
        cols = []
        for i in range(m):
            for j in range(i + 1, m):
                if mat[i][j] != mat[j][i]:
                    raise ParameterError(f"asymmetric color at ({i}, {j})")
                cols.append(mat[i][j])
        return cls(m, k, tuple(cols))

    @classmethod
    def from_function(cls, m: int, k: int, fn) -> "EdgeColoring":
        return cls(m, k, tuple(fn(i, j) for i in range(m) for j in range(i + 1, m)))


@dataclass(frozen=True)
class ColorSubgraph:
    """A simple graph on ``m`` vertices stored as adjacency bitmasks.

    ``color`` records which color class it was extracted from, or None for
    hand-built host graphs.
    """

    m: int
    adj: tuple[int, ...]
    color: int | None = field(default=None)

    @classmethod
    def from_edges(cls, m: int, edges, color: int | None = None) -> "ColorSubgraph":
        adj = [0] * m
        for u, v in edges:
            if u == v or not (0 <= u < m and 0 <= v < m):
                raise ParameterError(f"bad edge ({u}, {v}) for m={m}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return cls(m, tuple(adj), color)

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self.adj[u] >> v) & 1)

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.m) for v in iter_bits(self.adj[u]) if u < v]

    def num_edges(self) -> int:
        return sum(popcount(a) for a in self.adj) // 2

    def degree(self, v: int) -> int:
        return popcount(self.adj[v])

    def components(self) -> list[list[int]]:
        seen = 0
        comps = []
        for s in range(self.m):
            if (seen >> s) & 1:
                continue
            comp = frontier = 1 << s
            while frontier:
                nxt = 0
                for v in iter_bits(frontier):
                    nxt |= self.adj[v]
                frontier = nxt & ~comp
                comp |= frontier
            seen |= comp
            comps.append(list(iter_bits(comp)))
        return comps


def _check_color(c: int, k: int) -> None:
    if not 1 <= c <= k:
        raise ParameterError(f"color {c} outside [1, {k}]")


def new_uniform(m: int, k: int, c: int) -> EdgeColoring:
    if m < 1:
        raise ParameterError(f"vertex count must be >= 1, got {m}")
    _check_color(c, k)
    return EdgeColoring(m, k, (c,) * num_pairs(m))


def color_subgraph(g: EdgeColoring, c: int) -> ColorSubgraph:
    _check_color(c, g.k)
    adj = [0] * g.m
    for i, j, col in g.pairs():
        if col == c:
            adj[i] |= 1 << j
            adj[j] |= 1 << i
    return ColorSubgraph(g.m, tuple(adj), c)


def substitute(base: EdgeColoring, inserts: Sequence[EdgeColoring]) -> EdgeColoring:
    """Blow up each vertex i of ``base`` into the coloring ``inserts[i]``.

    Block i occupies a contiguous vertex range (prefix sums of insert sizes);
    edges between blocks i and j take ``base.color(i, j)``.
    """
    if len(inserts) != base.m:
        raise ParameterError(f"need {base.m} inserts, got {len(inserts)}")
    for ins in inserts:
        if ins.k != base.k:
            raise ParameterError(f"insert has k={ins.k}, base has k={base.k}")
    block = []
    local = []
    for b, ins in enumerate(inserts):
        block.extend([b] * ins.m)
        local.extend(range(ins.m))
    total = len(block)

    def fn(u, v):
        bu, bv = block[u], block[v]
        if bu == bv:
            return inserts[bu].color(local[u], local[v])
        return base.color(bu, bv)

    return EdgeColoring.from_function(total, base.k, fn)


def _random_composition(rng: random.Random, total: int, parts: int) -> list[int]:
    cuts = sorted(rng.sample(range(1, total), parts - 1))
    bounds = [0, *cuts, total]
    return [bounds[i + 1] - bounds[i] for i in range(parts)]


def random_gallai(m: int, k: int, seed: int) -> EdgeColoring:
    """Random Gallai coloring built by recursive substitution into 2-colored bases."""
    if m < 1 or k < 1:
        raise ParameterError(f"need m >= 1 and k >= 1, got m={m}, k={k}")
    rng = random.Random(seed)
    mat = [[0] * m for _ in range(m)]

    # explicit stack: (first vertex, block size)
    stack = [(0, m)]
    while stack:
        start, size = stack.pop()
        if size == 1:
            continue
        p = rng.randint(2, min(5, size))
        pair = rng.sample(range(1, k + 1), 2) if k >= 2 else [1, 1]
        sizes = _random_composition(rng, size, p)
        offsets = [start]
        for s in sizes[:-1]:
            offsets.append(offsets[-1] + s)
        for a in range(p):
            for b in range(a + 1, p):
                c = pair[rng.randrange(2)]
                for u in range(offsets[a], offsets[a] + sizes[a]):
                    row = mat[u]
                    for v in range(offsets[b], offsets[b] + sizes[b]):
                        row[v] = c
                        mat[v][u] = c
        for a in range(p):
            stack.append((offsets[a], sizes[a]))
    return EdgeColoring.from_matrix(k, mat)


# JSON ---------------------------------------------------------------------

def coloring_to_dict(g: EdgeColoring) -> dict:
    return {"format": COLORING_FORMAT, "m": g.m, "k": g.k, "colors": list(g.colors)}


def dumps_coloring(g: EdgeColoring) -> str:
    return json.dumps(coloring_to_dict(g), separators=(",", ":")) + "\n"


def _int_field(obj: dict, name: str) -> int:
    val = obj.get(name)
    if isinstance(val, bool) or not isinstance(val, int):
        raise FormatError(f"field {name!r} must be an integer, got {val!r}")
    return val


def coloring_from_dict(obj) -> EdgeColoring:
    if not isinstance(obj, dict):
        raise FormatError("coloring JSON must be an object")
    if obj.get("format") != COLORING_FORMAT:
        raise FormatError(f"format must be {COLORING_FORMAT!r}, got {obj.get('format')!r}")
    m = _int_field(obj, "m")
    k = _int_field(obj, "k")
    if m < 1:
        raise FormatError(f"m must be >= 1, got {m}")
    if k < 1:
        raise FormatError(f"k must be >= 1, got {k}")
    colors = obj.get("colors")
    if not isinstance(colors, list):
        raise FormatError("field 'colors' must be an array")
    if len(colors) != num_pairs(m):
        raise FormatError(f"'colors' has {len(colors)} entries, expected m(m-1)/2 = {num_pairs(m)}")
    for idx, c in enumerate(colors):
        if isinstance(c, bool) or not isinstance(c, int):
            raise FormatError(f"colors[{idx}] is not an integer: {c!r}")
        if not 1 <= c <= k:
            raise FormatError(f"colors[{idx}] = {c} outside [1, {k}]")
    return EdgeColoring(m, k, tuple(colors))


def loads_coloring(text: str) -> EdgeColoring:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    return coloring_from_dict(obj)


def read_coloring(path) -> EdgeColoring:
    with open(path, encoding="utf-8") as fh:
        return loads_coloring(fh.read())


def write_coloring(g: EdgeColoring, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_coloring(g))
