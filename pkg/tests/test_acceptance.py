"""Exit criteria.  Each test prints one PASS/FAIL line per criterion.

Run alone with ``pytest tests/test_acceptance.py -s``.
"""

import json
import random
import time
from contextlib import contextmanager
from itertools import combinations, product

import pytest

from conftest import ACCEPTANCE_LINES
from gforge.cli import main
from gforge.coloring import ColorSubgraph, color_subgraph, random_gallai, read_coloring
from gforge.constructions import two_color_cycle_witness
from gforge.cycles import (
    EXTRA_VERTEX,
    INTERNAL_BLUE_EDGE,
    MultipartiteSpec,
    complete_multipartite,
    find_monochromatic_cycle,
    has_cycle_of_length,
    multipartite_odd_cycle,
    verify_cycle_witness,
    weave_host,
    weave_join_cycle,
)
from gforge.structure import gallai_partition, reduced_coloring, verify_partition

from oracles import cycle_lengths_dp
from test_cycles import compositions


@contextmanager
def criterion(cid, desc):
    """Record and print a PASS/FAIL line; ``note`` collects the detail string."""
    note = {"detail": ""}
    start = time.monotonic()
    try:
        yield note
    except BaseException as exc:
        line = (cid, desc, False, f"{type(exc).__name__}: {exc}"[:300])
        ACCEPTANCE_LINES.append(line)
        print(f"[FAIL] {cid}: {desc} -- {line[3]}")
        raise
    detail = f"{note['detail']} ({time.monotonic() - start:.1f}s)".strip()
    ACCEPTANCE_LINES.append((cid, desc, True, detail))
    print(f"[PASS] {cid}: {desc} -- {detail}")


def cli(capsys, *argv):
    code = main([str(a) for a in argv])
    out, _ = capsys.readouterr()
    return code, out


def search(capsys, tmp_path, m, L, jobs=1, tag=""):
    rep = tmp_path / f"search_m{m}_L{L}_j{jobs}{tag}.json"
    code, _ = cli(capsys, "search", "--m", m, "--cycle", L, "--colors", 2, "--jobs", jobs, "-o", rep)
    return code, json.loads(rep.read_text()), rep


def test_c01_lower_bound_witness_suite(tmp_path, capsys):
    with criterion("C1", "gen efrs + verify --cycle 2n+1 --gallai exits 0 for n in 2..5, k in 1..5, < 60 s") as note:
        start = time.monotonic()
        largest = 0
        for n, k in product(range(2, 6), range(1, 6)):
            path = tmp_path / f"efrs_{n}_{k}.json"
            assert cli(capsys, "gen", "efrs", "--n", n, "--k", k, "-o", path)[0] == 0
            code, out = cli(capsys, "verify", path, "--cycle", 2 * n + 1, "--gallai")
            assert code == 0, f"(n={n}, k={k}) verify exit {code}: {out}"
            m = read_coloring(path).m
            assert m == n * 2 ** k
            largest = max(largest, m)
        elapsed = time.monotonic() - start
        assert elapsed < 60, f"took {elapsed:.1f}s"
        note["detail"] = f"20 witnesses, up to {largest} vertices"


def test_c02_r2_c4(tmp_path, capsys):
    with criterion("C2", "R2(C4)=6: K6 verified within 2^15 nodes, K5 counterexample re-verifies, < 5 s") as note:
        start = time.monotonic()
        code, rep, _ = search(capsys, tmp_path, 6, 4)
        assert code == 0 and rep["outcome"] == "verified"
        assert rep["nodes"] <= 2 ** 15
        code5, rep5, path5 = search(capsys, tmp_path, 5, 4)
        assert code5 == 1 and rep5["outcome"] == "counterexample"
        cx = path5.with_name(path5.name[:-5] + ".counterexample.json")
        assert cli(capsys, "verify", cx, "--cycle", 4)[0] == 0
        elapsed = time.monotonic() - start
        assert elapsed < 5
        note["detail"] = f"K6 nodes={rep['nodes']}, K5 nodes={rep5['nodes']}"


def test_c03_r2_c6(tmp_path, capsys):
    with criterion("C3", "R2(C6)=8: K8 verified (--jobs 8), K7 counterexample, < 10 min") as note:
        start = time.monotonic()
        code, rep, _ = search(capsys, tmp_path, 8, 6, jobs=8)
        assert code == 0 and rep["outcome"] == "verified"
        code7, rep7, path7 = search(capsys, tmp_path, 7, 6)
        assert code7 == 1
        cx = path7.with_name(path7.name[:-5] + ".counterexample.json")
        assert cli(capsys, "verify", cx, "--cycle", 6)[0] == 0
        elapsed = time.monotonic() - start
        assert elapsed < 600
        note["detail"] = f"K8 nodes={rep['nodes']}"


def test_c04_r2_c3(tmp_path, capsys):
    with criterion("C4", "R2(C3)=6: K6 verified, K5 double-pentagon counterexample re-verifies, < 5 s") as note:
        start = time.monotonic()
        code, rep, _ = search(capsys, tmp_path, 6, 3)
        assert code == 0 and rep["outcome"] == "verified"
        code5, rep5, path5 = search(capsys, tmp_path, 5, 3)
        assert code5 == 1
        cx_path = path5.with_name(path5.name[:-5] + ".counterexample.json")
        assert cli(capsys, "verify", cx_path, "--cycle", 3)[0] == 0
        g = read_coloring(cx_path)
        for c in (1, 2):
            h = color_subgraph(g, c)
            assert all(h.degree(v) == 2 for v in range(5))
            assert has_cycle_of_length(h, 5) is not None
        assert time.monotonic() - start < 5
        note["detail"] = "both color classes are 5-cycles"


def test_c05_two_color_witnesses():
    with criterion("C5", "two_color_cycle_witness(n), n in 2..8, has no monochromatic C_{2n+1}") as note:
        for n in range(2, 9):
            g = two_color_cycle_witness(n)
            assert g.m == 4 * n
            assert find_monochromatic_cycle(g, 2 * n + 1) is None, f"n={n}"
        note["detail"] = "7 witnesses"


def test_c06_gallai_partition_property_suite():
    with criterion("C6", ">= 1000 random Gallai colorings (m <= 40, k <= 6): valid partition, p > 1, "
                         "reduced uses <= 2 colors, < 60 s") as note:
        start = time.monotonic()
        rng = random.Random(20261016)
        count = 0
        for _ in range(1000):
            m = rng.randint(2, 40)
            k = rng.randint(1, 6)
            g = random_gallai(m, k, rng.randrange(2 ** 32))
            P = gallai_partition(g)
            assert P.p > 1
            assert verify_partition(g, P) == []
            assert len(reduced_coloring(g, P).used_colors()) <= 2
            count += 1
        elapsed = time.monotonic() - start
        assert elapsed < 60
        note["detail"] = f"{count} colorings"


def test_c07_multipartite_exhaustive():
    with criterion("C7", "every composition of 2n+1 into >= 3 parts <= n (n in 4,5) yields a verified C_{2n+1}") as note:
        total = 0
        failures = []
        for n in (4, 5):
            for sizes in compositions(2 * n + 1, n):
                w = multipartite_odd_cycle(MultipartiteSpec(sizes, n))
                if len(w) != 2 * n + 1 or verify_cycle_witness(complete_multipartite(sizes), w):
                    failures.append(sizes)
                total += 1
        assert not failures, f"failures: {failures[:5]}"
        note["detail"] = f"{total} compositions, 0 failures"


def test_c08_weave_constructive():
    with criterion("C8", "both weave modes, n in 4,5, sizes up to +3 over minimum, verified C_{2n+1}") as note:
        total = 0
        failures = []
        for n in (4, 5):
            for mode, (ymin, zmin) in ((EXTRA_VERTEX, (n, n)), (INTERNAL_BLUE_EDGE, (n, n + 1))):
                for dy, dz in product(range(4), repeat=2):
                    sy, sz = ymin + dy, zmin + dz
                    w = weave_join_cycle(sy, sz, n, mode)
                    if len(w) != 2 * n + 1 or verify_cycle_witness(weave_host(sy, sz, mode), w):
                        failures.append((n, mode, sy, sz))
                    total += 1
        assert not failures, f"failures: {failures[:5]}"
        note["detail"] = f"{total} instances, 0 failures"


def _check_graph(m, edges, disagreements):
    h = ColorSubgraph.from_edges(m, edges)
    truth = cycle_lengths_dp(m, list(h.adj))
    for L in range(3, m + 1):
        w = has_cycle_of_length(h, L)
        if (w is not None) != (L in truth) or (w is not None and verify_cycle_witness(h, w)):
            disagreements.append((m, tuple(edges), L))


def test_c09_detector_oracle_equivalence():
    with criterion("C9", "detector == brute-force on all graphs <= 6 vertices and 10^4 random graphs "
                         "on 7-10 vertices, < 10 min") as note:
        start = time.monotonic()
        disagreements = []
        exhaustive = 0
        for m in range(3, 7):
            pairs = list(combinations(range(m), 2))
            for bits in range(1 << len(pairs)):
                edges = [pairs[i] for i in range(len(pairs)) if (bits >> i) & 1]
                _check_graph(m, edges, disagreements)
                exhaustive += 1
        rng = random.Random(9)
        for _ in range(10_000):
            m = rng.randint(7, 10)
            p = rng.uniform(0.15, 0.8)
            edges = [e for e in combinations(range(m), 2) if rng.random() < p]
            _check_graph(m, edges, disagreements)
        elapsed = time.monotonic() - start
        assert not disagreements, f"{len(disagreements)} disagreements, first {disagreements[0]}"
        assert elapsed < 600
        note["detail"] = f"{exhaustive} exhaustive + 10000 random graphs, 0 disagreements"


def test_c10_determinism_across_workers(tmp_path, capsys):
    with criterion("C10", "criteria 2-4 searches give identical outcomes and node counts with --jobs 1 and 8") as note:
        rows = []
        for m, L in ((6, 4), (5, 4), (8, 6), (7, 6), (6, 3), (5, 3)):
            runs = []
            for jobs in (1, 8):
                code, rep, _ = search(capsys, tmp_path, m, L, jobs=jobs, tag="det")
                runs.append((code, rep["outcome"], rep["nodes"], rep["prunes"], rep["counterexample"]))
            assert runs[0] == runs[1], f"m={m}, L={L}: {runs[0][:3]} vs {runs[1][:3]}"
            rows.append(f"K{m}/C{L}:{runs[0][2]}")
        note["detail"] = ", ".join(rows)
