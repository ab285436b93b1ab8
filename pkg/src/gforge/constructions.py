"""Extremal lower-bound colorings for odd cycles and the known bounds on GR_k(C_{2n+1})."""

from __future__ import annotations

import math
from dataclasses import dataclass

from .coloring import EdgeColoring, new_uniform, substitute
from .errors import ParameterError

# n values for which GR_k(C_{2n+1}) = n * 2^k + 1 is known for every k
EXACT_N = frozenset({2, 3, 4, 5})


@dataclass(frozen=True)
class WitnessParams:
    n: int
    k: int

    def __post_init__(self):
        if self.n < 2:
            raise ParameterError(f"n must be >= 2, got {self.n}")
        if self.k < 1:
            raise ParameterError(f"k must be >= 1, got {self.k}")


@dataclass(frozen=True)
class Bounds:
    n: int
    k: int
    lower: int
    upper: float
    exact: int | None

    @property
    def upper_floor(self) -> int:
        return math.floor(self.upper)

    def as_dict(self) -> dict:
        return {"n": self.n, "k": self.k, "lower": self.lower, "upper": self.upper,
                "upper_floor": self.upper_floor, "exact": self.exact}


def _params(p, k):
    if isinstance(p, WitnessParams):
        return p
    return WitnessParams(p, k)


def efrs_witness(p, k: int | None = None) -> EdgeColoring:
    """Coloring of K_{n 2^k} with no monochromatic C_{2n+1} and no rainbow triangle.

    Vertices fall into blocks of 2n; a block is a K_{2n} in color 1.  Two
    vertices in different blocks get color ``2 + (index of the highest bit
    where their block numbers differ)``, which is the same as joining two
    copies of the previous level with color i at level i.

    Accepts either a :class:`WitnessParams` or ``(n, k)``.
    """
    p = _params(p, k)
    block = 2 * p.n
    m = block << (p.k - 1)

    def fn(u, v):
        diff = (u // block) ^ (v // block)
        return 1 if diff == 0 else diff.bit_length() + 1

    return EdgeColoring.from_function(m, p.k, fn)


def efrs_witness_recursive(p, k: int | None = None) -> EdgeColoring:
    """Same coloring as :func:`efrs_witness`, built level by level via substitution."""
    p = _params(p, k)
    g = new_uniform(2 * p.n, p.k, 1)
    for level in range(2, p.k + 1):
        g = substitute(new_uniform(2, p.k, level), [g, g])
    return g


def two_color_cycle_witness(n: int) -> EdgeColoring:
    """K_{4n}: color 1 inside two halves of size 2n, color 2 between them."""
    if n < 2:
        raise ParameterError(f"n must be >= 2, got {n}")
    return efrs_witness(WitnessParams(n, 2))


def gr_bounds(p, k: int | None = None) -> Bounds:
    p = _params(p, k)
    lower = p.n * 2 ** p.k + 1
    upper = (2 ** (p.k + 3) - 3) * p.n * math.log(p.n)
    exact = lower if p.n in EXACT_N else None
    return Bounds(p.n, p.k, lower, upper, exact)
