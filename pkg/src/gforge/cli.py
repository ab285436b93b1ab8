"""``gforge`` command line.

Exit codes: 0 success / verified, 1 a witness or counterexample was found,
2 bad arguments or malformed input, 3 search budget exhausted.
Machine-readable JSON goes to stdout, human-readable notes to stderr.
"""

from __future__ import annotations

import argparse
import json
import logging
import os
import sys
import time
from collections import Counter
from pathlib import Path

from . import __version__
from .coloring import dumps_coloring, new_uniform, random_gallai, read_coloring
from .constructions import efrs_witness, gr_bounds, two_color_cycle_witness
from .cycles import find_monochromatic_cycle, witness_to_dict
from .errors import GforgeError
from .manifest import RunManifest
from .search import BUDGET, COUNTEREXAMPLE, VERIFIED, Budget, SearchProblem, verify_upper
from .structure import (
    dumps_partition,
    find_rainbow_triangle,
    gallai_partition,
    read_partition,
    reduced_coloring,
    verify_partition,
)

EXIT_OK = 0
EXIT_FOUND = 1
EXIT_USAGE = 2
EXIT_BUDGET = 3

SEED_ENV = "GFORGE_SEED"


class _Usage(Exception):
    pass


def _emit(obj) -> None:
    sys.stdout.write(json.dumps(obj, separators=(",", ":")) + "\n")


def _note(msg: str) -> None:
    print(msg, file=sys.stderr)


def _write_text(path, text: str, manifest: RunManifest | None) -> None:
    Path(path).write_text(text, encoding="utf-8")
    if manifest is not None:
        manifest.record_output(path)


def _load(path, manifest):
    g = read_coloring(path)
    if manifest is not None:
        manifest.record_input(path)
    return g


def _summary(g) -> str:
    counts = Counter(g.colors)
    parts = ", ".join(f"color {c}: {counts[c]} edges" for c in sorted(counts))
    return f"K_{g.m}, k={g.k}; {parts or 'no edges'}"


def _require(args, *names):
    missing = [n for n in names if getattr(args, n) is None]
    if missing:
        raise _Usage(f"gen {args.kind} requires " + ", ".join("--" + n.replace("_", "-") for n in missing))


def cmd_gen(args, manifest) -> int:
    kind = args.kind
    if kind == "efrs":
        _require(args, "n", "k")
        g = efrs_witness(args.n, args.k)
    elif kind == "two-color":
        _require(args, "n")
        g = two_color_cycle_witness(args.n)
    elif kind == "random-gallai":
        _require(args, "m", "k")
        seed = args.seed
        if seed is None:
            env = os.environ.get(SEED_ENV)
            try:
                seed = int(env) if env is not None else 0
            except ValueError:
                raise _Usage(f"{SEED_ENV}={env!r} is not an integer") from None
        if manifest is not None:
            manifest.seed = seed
        g = random_gallai(args.m, args.k, seed)
    else:
        _require(args, "m", "k", "color")
        g = new_uniform(args.m, args.k, args.color)
    text = dumps_coloring(g)
    _note(_summary(g))
    if args.output:
        _write_text(args.output, text, manifest)
        _emit({"m": g.m, "k": g.k, "output": str(args.output), "summary": _summary(g)})
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_verify(args, manifest) -> int:
    g = _load(args.coloring, manifest)
    if args.cycle < 3:
        raise _Usage(f"--cycle must be >= 3, got {args.cycle}")
    hit = find_monochromatic_cycle(g, args.cycle)
    tri = find_rainbow_triangle(g) if args.gallai else None
    out = {"m": g.m, "k": g.k, "cycle_length": args.cycle, "gallai_checked": bool(args.gallai),
           "ok": hit is None and tri is None,
           "cycle": None if hit is None else witness_to_dict(hit[1]),
           "rainbow": None if tri is None else list(tri)}
    _emit(out)
    if hit is not None:
        _note(f"monochromatic C_{args.cycle} in color {hit[0]}: {list(hit[1].vertices)}")
    if tri is not None:
        _note(f"rainbow triangle {tri}")
    if out["ok"]:
        _note(f"no monochromatic C_{args.cycle}" + (" and no rainbow triangle" if args.gallai else ""))
        return EXIT_OK
    return EXIT_FOUND


def cmd_partition(args, manifest) -> int:
    g = _load(args.coloring, manifest)
    tri = find_rainbow_triangle(g)
    if tri is not None:
        _emit({"rainbow": list(tri)})
        _note(f"not a Gallai coloring: rainbow triangle {tri}")
        return EXIT_FOUND
    if g.m < 2:
        raise _Usage("a Gallai partition needs at least 2 vertices")
    P = gallai_partition(g)
    R = reduced_coloring(g, P)
    reduced_path = args.reduced or _sibling(args.output, ".reduced.json")
    _write_text(args.output, dumps_partition(P), manifest)
    _write_text(reduced_path, dumps_coloring(R), manifest)
    _emit({"p": P.p, "between_colors": sorted(P.between_colors),
           "partition": str(args.output), "reduced": str(reduced_path)})
    _note(f"{P.p} parts, between colors {sorted(P.between_colors)}")
    return EXIT_OK


def _sibling(path, suffix: str) -> str:
    p = Path(path)
    name = p.name[:-5] if p.name.endswith(".json") else p.name
    return str(p.with_name(name + suffix))


def cmd_check_partition(args, manifest) -> int:
    g = _load(args.coloring, manifest)
    P = read_partition(args.partition)
    if manifest is not None:
        manifest.record_input(args.partition)
    bad = verify_partition(g, P)
    _emit({"ok": not bad, "violations": [str(v) for v in bad]})
    if bad:
        _note(f"{len(bad)} violation(s)")
        return EXIT_FOUND
    return EXIT_OK


def cmd_search(args, manifest) -> int:
    try:
        budget = Budget(nodes=args.budget_nodes, seconds=args.budget_seconds)
        pb = SearchProblem(args.m, args.cycle, args.colors, gallai_only=args.gallai, budget=budget)
    except GforgeError as exc:
        raise _Usage(str(exc)) from None
    rep = verify_upper(pb, jobs=args.jobs, split_depth=args.split_depth)
    text = rep.dumps()
    if args.output:
        _write_text(args.output, text, manifest)
    else:
        sys.stdout.write(text)
    _note(f"{rep.outcome}: {rep.nodes} nodes, prunes {rep.prunes}, {rep.elapsed:.2f}s")
    if rep.outcome == COUNTEREXAMPLE:
        cx_path = args.counterexample
        if cx_path is None and args.output:
            cx_path = _sibling(args.output, ".counterexample.json")
        if cx_path is not None:
            _write_text(cx_path, dumps_coloring(rep.counterexample), manifest)
            _note(f"counterexample written to {cx_path}")
        return EXIT_FOUND
    if rep.outcome == BUDGET:
        return EXIT_BUDGET
    assert rep.outcome == VERIFIED
    return EXIT_OK


def cmd_bounds(args, manifest) -> int:
    try:
        b = gr_bounds(args.n, args.k)
    except GforgeError as exc:
        raise _Usage(str(exc)) from None
    _emit(b.as_dict())
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="gforge", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"gforge {__version__}")
    parser.add_argument("--manifest", help="write a run manifest (argv, seed, digests) to this path")
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate a coloring")
    p.add_argument("kind", choices=["efrs", "two-color", "random-gallai", "uniform"])
    p.add_argument("--n", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--m", type=int)
    p.add_argument("--color", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("-o", "--output")
    p.set_defaults(func=cmd_gen)

    p = sub.add_parser("verify", help="check a coloring for monochromatic C_L / rainbow triangles")
    p.add_argument("coloring")
    p.add_argument("--cycle", type=int, required=True)
    p.add_argument("--gallai", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("partition", help="compute a Gallai partition and the reduced coloring")
    p.add_argument("coloring")
    p.add_argument("-o", "--output", required=True)
    p.add_argument("--reduced")
    p.set_defaults(func=cmd_partition)

    p = sub.add_parser("check-partition", help="validate a partition file against a coloring")
    p.add_argument("coloring")
    p.add_argument("partition")
    p.set_defaults(func=cmd_check_partition)

    p = sub.add_parser("search", help="exhaustive Ramsey / Gallai-Ramsey search")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--cycle", type=int, required=True)
    p.add_argument("--colors", type=int, required=True)
    p.add_argument("--gallai", action="store_true")
    p.add_argument("--budget-nodes", type=int, default=Budget.nodes)
    p.add_argument("--budget-seconds", type=float, default=Budget.seconds)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--split-depth", type=int)
    p.add_argument("-o", "--output")
    p.add_argument("--counterexample")
    p.set_defaults(func=cmd_search)

    p = sub.add_parser("bounds", help="known bounds on GR_k(C_{2n+1})")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_bounds)
    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else EXIT_USAGE
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING,
                        format="%(levelname)s %(name)s: %(message)s")
    manifest = None
    if args.manifest:
        replay_argv = []
        skip = False
        for a in argv:
            if skip:
                skip = False
                continue
            if a == "--manifest":
                skip = True
                continue
            if a.startswith("--manifest="):
                continue
            replay_argv.append(a)
        manifest = RunManifest(argv=replay_argv, version=__version__)
    start = time.monotonic()
    try:
        code = args.func(args, manifest)
    except _Usage as exc:
        _note(f"gforge {args.command}: {exc}")
        code = EXIT_USAGE
    except (GforgeError, OSError) as exc:
        _note(f"gforge {args.command}: {exc}")
        code = EXIT_USAGE
    if manifest is not None:
        manifest.elapsed_ms = int((time.monotonic() - start) * 1000)
        manifest.exit_code = code
        manifest.write(args.manifest)
    return code


def entry() -> None:
    sys.exit(main())
