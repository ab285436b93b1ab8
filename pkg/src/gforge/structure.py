"""Rainbow triangles, Gallai partitions and reduced colorings."""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import NamedTuple

from .coloring import EdgeColoring
from .errors import FormatError, InvalidPartitionError, ParameterError, RainbowTriangleError

PARTITION_FORMAT = "gallai-partition-v1"


def find_rainbow_triangle(g: EdgeColoring):
    """Lexicographically first triple (u, v, w) with three distinct edge colors, or None."""
    if g.k < 3:
        return None
    rows = g.rows()
    m = g.m
    for u in range(m):
        ru = rows[u]
        for v in range(u + 1, m):
            a = ru[v]
            rv = rows[v]
            for w in range(v + 1, m):
                b = ru[w]
                if b != a:
                    c = rv[w]
                    if c != a and c != b:
                        return (u, v, w)
    return None


@dataclass(frozen=True)
class GallaiPartition:
    parts: tuple[tuple[int, ...], ...]
    pair_color: dict
    between_colors: frozenset

    @classmethod
    def build(cls, parts, pair_color: dict) -> "GallaiPartition":
        norm = {}
        for (i, j), c in pair_color.items():
            norm[(min(i, j), max(i, j))] = c
        return cls(tuple(tuple(p) for p in parts), norm, frozenset(norm.values()))

    @property
    def p(self) -> int:
        return len(self.parts)

    def color_between(self, i: int, j: int):
        return self.pair_color.get((min(i, j), max(i, j)))


class Violation(NamedTuple):
    kind: str
    where: tuple
    detail: str

    def __str__(self):
        return f"{self.kind} at {self.where}: {self.detail}"


def verify_partition(g: EdgeColoring, P: GallaiPartition) -> list[Violation]:
    """Check every Gallai-partition property of ``P`` against ``g``; [] means valid."""
    out: list[Violation] = []
    owner = {}
    for idx, part in enumerate(P.parts):
        if not part:
            out.append(Violation("empty-part", (idx,), "part is empty"))
        for v in part:
            if not 0 <= v < g.m:
                out.append(Violation("bad-vertex", (idx, v), f"vertex outside 0..{g.m - 1}"))
            elif v in owner:
                out.append(Violation("overlap", (v,), f"vertex in parts {owner[v]} and {idx}"))
            else:
                owner[v] = idx
    missing = [v for v in range(g.m) if v not in owner]
    if missing:
        out.append(Violation("uncovered", tuple(missing), "vertices in no part"))
    if g.m >= 2 and P.p < 2:
        out.append(Violation("trivial", (P.p,), "need at least two parts"))
    if len(P.between_colors) > 2:
        out.append(Violation("too-many-colors", tuple(sorted(P.between_colors)),
                             "more than two colors between parts"))
    for i, j in combinations(range(P.p), 2):
        want = P.color_between(i, j)
        if want is None:
            out.append(Violation("missing-pair-color", (i, j), "no color recorded for part pair"))
            continue
        if want not in P.between_colors:
            out.append(Violation("pair-color-not-between", (i, j), f"color {want} not in between_colors"))
        for u in P.parts[i]:
            if owner.get(u) != i:
                continue
            for v in P.parts[j]:
                if owner.get(v) != j:
                    continue
                c = g.color(u, v)
                if c != want:
                    out.append(Violation("cross-edge", (u, v), f"color {c}, parts ({i}, {j}) expect {want}"))
    return out


class _DSU:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, x):
        parent = self.parent
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if rb < ra:
            ra, rb = rb, ra
        self.parent[rb] = ra
        return True


def _candidates(k: int):
    for a in range(1, k + 1):
        yield frozenset((a,))
    for a, b in combinations(range(1, k + 1), 2):
        yield frozenset((a, b))


def _try_candidate(g: EdgeColoring, allowed: frozenset):
    m = g.m
    dsu = _DSU(m)
    pairs = list(g.pairs())
    for u, v, c in pairs:
        if c not in allowed:
            dsu.union(u, v)
    # merge parts whose cross edges are not monochromatic, to fixpoint
    roots = len({dsu.find(v) for v in range(m)})
    while roots > 1:
        # colors seen per part pair; keys stay sound across unions in one pass
        seen = {}
        merged = False
        for u, v, c in pairs:
            ru, rv = dsu.find(u), dsu.find(v)
            if ru == rv:
                continue
            key = (ru, rv) if ru < rv else (rv, ru)
            if seen.setdefault(key, c) != c:
                dsu.union(ru, rv)
                roots -= 1
                merged = True
        if not merged:
            break
    groups = {}
    for v in range(m):
        groups.setdefault(dsu.find(v), []).append(v)
    if len(groups) < 2:
        return None
    parts = sorted(groups.values(), key=lambda p: p[0])
    pair_color = {}
    for i, j in combinations(range(len(parts)), 2):
        pair_color[(i, j)] = g.color(parts[i][0], parts[j][0])
    return GallaiPartition.build(parts, pair_color)


def gallai_partition(g: EdgeColoring) -> GallaiPartition:
    """Compute some Gallai partition of a rainbow-triangle-free coloring.

    Colorings using at most two colors get the all-singletons partition.
    Otherwise candidate between-color sets are tried singletons first, then
    pairs, lexicographically; the first yielding more than one part wins.
    """
    if g.m < 2:
        raise ParameterError(f"Gallai partition needs m >= 2, got {g.m}")
    tri = find_rainbow_triangle(g)
    if tri is not None:
        raise RainbowTriangleError(tri)
    if len(g.used_colors()) <= 2:
        parts = [(v,) for v in range(g.m)]
        return GallaiPartition.build(parts, {(i, j): c for i, j, c in g.pairs()})
    for cand in _candidates(g.k):
        P = _try_candidate(g, cand)
        if P is not None:
            return P
    # unreachable for Gallai colorings
    raise AssertionError("no candidate color set produced a Gallai partition")


def reduced_coloring(g: EdgeColoring, P: GallaiPartition) -> EdgeColoring:
    bad = verify_partition(g, P)
    if bad:
        raise InvalidPartitionError(bad)
    return EdgeColoring.from_function(P.p, g.k, lambda i, j: P.color_between(i, j))


def representatives(P: GallaiPartition) -> list[int]:
    return [min(part) for part in P.parts]


# JSON ---------------------------------------------------------------------

def partition_to_dict(P: GallaiPartition) -> dict:
    return {
        "format": PARTITION_FORMAT,
        "parts": [list(p) for p in P.parts],
        "pair_colors": [[i, j, c] for (i, j), c in sorted(P.pair_color.items())],
    }


def dumps_partition(P: GallaiPartition) -> str:
    return json.dumps(partition_to_dict(P), separators=(",", ":")) + "\n"


def partition_from_dict(obj) -> GallaiPartition:
    if not isinstance(obj, dict) or obj.get("format") != PARTITION_FORMAT:
        raise FormatError(f"expected an object with format {PARTITION_FORMAT!r}")
    parts = obj.get("parts")
    if not isinstance(parts, list) or not all(isinstance(p, list) for p in parts):
        raise FormatError("'parts' must be an array of arrays")
    for p in parts:
        for v in p:
            if isinstance(v, bool) or not isinstance(v, int):
                raise FormatError(f"part entry {v!r} is not an integer")
    triples = obj.get("pair_colors")
    if not isinstance(triples, list):
        raise FormatError("'pair_colors' must be an array")
    pair_color = {}
    for t in triples:
        if (not isinstance(t, list) or len(t) != 3
                or any(isinstance(x, bool) or not isinstance(x, int) for x in t)):
            raise FormatError(f"pair_colors entry {t!r} must be [i, j, c]")
        i, j, c = t
        if not (0 <= i < len(parts) and 0 <= j < len(parts)) or i == j:
            raise FormatError(f"pair_colors entry {t!r} references unknown parts")
        pair_color[(i, j)] = c
    return GallaiPartition.build(parts, pair_color)


def loads_partition(text: str) -> GallaiPartition:
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    return partition_from_dict(obj)


def read_partition(path) -> GallaiPartition:
    with open(path, encoding="utf-8") as fh:
        return loads_partition(fh.read())


def write_partition(P: GallaiPartition, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps_partition(P))
