import math

import pytest

from gforge.coloring import color_subgraph
from gforge.constructions import (
    WitnessParams,
    efrs_witness,
    efrs_witness_recursive,
    gr_bounds,
    two_color_cycle_witness,
)
from gforge.cycles import find_monochromatic_cycle
from gforge.errors import ParameterError
from gforge.structure import find_rainbow_triangle


def test_params_validation():
    with pytest.raises(ParameterError):
        WitnessParams(1, 3)
    with pytest.raises(ParameterError):
        WitnessParams(4, 0)


def test_base_case_is_uniform_k8():
    g = efrs_witness(4, 1)
    assert g.m == 8 and set(g.colors) == {1}
    assert find_monochromatic_cycle(g, 9) is None


def test_efrs_4_3():
    g = efrs_witness(WitnessParams(4, 3))
    assert g.m == 32
    h3 = color_subgraph(g, 3)
    assert set(h3.edges()) == {(u, v) for u in range(16) for v in range(16, 32)}
    assert find_monochromatic_cycle(g, 9) is None
    assert find_rainbow_triangle(g) is None


def test_efrs_5_2_has_twenty_vertices():
    assert efrs_witness(5, 2).m == 20


@pytest.mark.parametrize("n,k", [(n, k) for n in range(2, 6) for k in range(1, 5)])
def test_closed_form_matches_recursive_doubling(n, k):
    assert efrs_witness(n, k) == efrs_witness_recursive(n, k)


def _is_complete_bipartite(h, comp):
    # two-color the component by BFS and check every cross pair is an edge
    side = {comp[0]: 0}
    queue = [comp[0]]
    while queue:
        u = queue.pop()
        for v in comp:
            if h.has_edge(u, v) and v not in side:
                side[v] = 1 - side[u]
                queue.append(v)
    left = [v for v in comp if side[v] == 0]
    right = [v for v in comp if side[v] == 1]
    ok = all(h.has_edge(a, b) for a in left for b in right)
    ok = ok and not any(h.has_edge(a, b) for a in left for b in left if a < b)
    ok = ok and not any(h.has_edge(a, b) for a in right for b in right if a < b)
    return ok, len(left), len(right)


@pytest.mark.parametrize("n,k", [(n, k) for n in range(2, 7) for k in range(1, 6)])
def test_efrs_grid(n, k):
    g = efrs_witness(n, k)
    assert g.m == n * 2 ** k
    assert find_rainbow_triangle(g) is None
    assert find_monochromatic_cycle(g, 2 * n + 1) is None
    # color 1: 2^(k-1) disjoint K_{2n}
    comps = color_subgraph(g, 1).components()
    assert len(comps) == 2 ** (k - 1)
    h1 = color_subgraph(g, 1)
    for comp in comps:
        assert len(comp) == 2 * n
        assert all(h1.has_edge(a, b) for a in comp for b in comp if a < b)
    # color i >= 2: 2^(k-i) complete bipartite components, sides n 2^(i-1)
    for i in range(2, k + 1):
        h = color_subgraph(g, i)
        comps = [c for c in h.components() if len(c) > 1]
        assert len(comps) == 2 ** (k - i)
        for comp in comps:
            ok, a, b = _is_complete_bipartite(h, comp)
            assert ok and a == b == n * 2 ** (i - 1)


@pytest.mark.parametrize("n", range(2, 9))
def test_two_color_witness(n):
    g = two_color_cycle_witness(n)
    assert g.m == 4 * n
    assert g == efrs_witness(n, 2)
    assert find_monochromatic_cycle(g, 2 * n + 1) is None


def test_two_color_witness_rejects_small_n():
    with pytest.raises(ParameterError):
        two_color_cycle_witness(1)


def test_bounds_examples():
    b = gr_bounds(4, 3)
    assert b.lower == 33 and b.exact == 33
    assert b.upper == pytest.approx(61 * 4 * math.log(4))
    assert b.upper == pytest.approx(338.2558, abs=1e-3)
    assert b.upper_floor == 338
    b = gr_bounds(WitnessParams(5, 1))
    assert (b.lower, b.exact) == (11, 11)
    b = gr_bounds(2, 4)
    assert (b.lower, b.exact) == (33, 33)
    b = gr_bounds(3, 4)
    assert (b.lower, b.exact) == (49, 49)
    assert gr_bounds(6, 2).exact is None


@pytest.mark.parametrize("n,k", [(n, k) for n in range(2, 12) for k in range(1, 8)])
def test_lower_not_above_upper(n, k):
    b = gr_bounds(n, k)
    assert b.lower <= b.upper
