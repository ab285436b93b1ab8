"""Bitmask graph primitives used by the cycle detector and the search core.

Graphs are lists of ints: ``adj[v]`` has bit ``w`` set iff ``vw`` is an edge.
"""

from __future__ import annotations


def iter_bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def popcount(mask: int) -> int:
    return bin(mask).count("1")


def neighborhood(adj, mask: int) -> int:
    out = 0
    while mask:
        low = mask & -mask
        out |= adj[low.bit_length() - 1]
        mask ^= low
    return out


def bfs_layers(adj, src: int, allowed: int) -> list[int]:
    """Return BFS layers (as masks) from ``src`` inside the vertex set ``allowed``."""
    frontier = 1 << src
    seen = frontier
    layers = [frontier]
    while True:
        nxt = neighborhood(adj, frontier) & allowed & ~seen
        if not nxt:
            return layers
        seen |= nxt
        layers.append(nxt)
        frontier = nxt


def is_bipartite_layers(adj, layers: list[int]) -> bool:
    """A connected graph is bipartite iff no edge joins two layers of equal parity."""
    even = 0
    odd = 0
    for d, layer in enumerate(layers):
        if d & 1:
            odd |= layer
        else:
            even |= layer
    for side in (even, odd):
        for v in iter_bits(side):
            if adj[v] & side:
                return False
    return True


def balls(layers: list[int]) -> list[int]:
    """``balls(layers)[r]`` is the mask of vertices within distance r of the BFS source."""
    out = []
    acc = 0
    for layer in layers:
        acc |= layer
        out.append(acc)
    return out


_MEMO_FROM = 4


def find_path(adj, src: int, dst: int, length: int, allowed: int,
              within: list[int] | None = None, dead: set | None = None):
    """Find a simple ``src``-``dst`` path with exactly ``length`` edges.

    Internal vertices are drawn from ``allowed``.  ``within[r]`` is the set
    of vertices at distance at most r from ``dst`` (see :func:`balls`) and
    serves as a lower bound on the remaining length.  ``dead`` memoizes
    failed (vertex, visited) states; it may be shared between calls with the
    same ``dst``, ``length`` and ``allowed``.  Returns the vertex list or None.
    """
    if length < 1 or src == dst:
        return None
    if dead is None:
        dead = set()
    dst_bit = 1 << dst
    inner = allowed & ~dst_bit
    if within is None:
        within = [inner]
    last = len(within) - 1
    path = [src]

    def extend(x: int, rem: int, visited: int) -> bool:
        if rem == 1:
            return bool(adj[x] & dst_bit)
        memo = rem >= _MEMO_FROM
        if memo:
            key = (x, visited)
            if key in dead:
                return False
        cand = adj[x] & inner & ~visited & within[rem - 1 if rem - 1 < last else last]
        while cand:
            low = cand & -cand
            cand ^= low
            path.append(low.bit_length() - 1)
            if extend(path[-1], rem - 1, visited | low):
                return True
            path.pop()
        if memo:
            dead.add(key)
        return False

    if extend(src, length, (1 << src) | dst_bit):
        path.append(dst)
        return path
    return None


def distances(layers: list[int]) -> dict[int, int]:
    dist = {}
    for d, layer in enumerate(layers):
        for v in iter_bits(layer):
            dist[v] = d
    return dist
