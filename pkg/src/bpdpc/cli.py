"""Command-line front end.

Exit codes: 0 success, 2 bad input or a request outside the proven bounds,
3 an internal construction failure.
"""

from __future__ import annotations

import argparse
import logging
import sys
from pathlib import Path
from typing import Sequence

from .base_solver import build_bp3_table, get_table, load_table, save_table, set_table
from .errors import BPError, ConstructionError, DomainError, TableError
from .fault_model import FaultSet, Region
from .graph_core import format_vertex, parse_edge, parse_vertex
from .verifier import (
    check_blocking,
    counterexample,
    verify_dpc,
    verify_ham_cycle,
    verify_ham_path,
)

EXIT_OK, EXIT_INPUT, EXIT_INTERNAL = 0, 2, 3


def format_path(p) -> str:
    return ",".join(format_vertex(v) for v in p)


def parse_path(line: str, n: int) -> tuple:
    return tuple(parse_vertex(tok, n) for tok in line.split(","))


def parse_pair(text: str, n: int) -> tuple:
    parts = text.split(",")
    if len(parts) != 2:
        raise DomainError(f"expected '<vertex> , <vertex>', got {text!r}")
    return parse_vertex(parts[0], n), parse_vertex(parts[1], n)


def to_dot(paths, closed: bool = False) -> str:
    colors = ("green", "blue")
    lines = ["graph bp {", "  node [shape=box, fontname=monospace];"]
    for i, p in enumerate(paths):
        color = colors[i % 2]
        for v in p:
            lines.append(f'  "{format_vertex(v)}" [color={color}];')
        steps = list(zip(p, p[1:]))
        if closed and len(p) > 2:
            steps.append((p[-1], p[0]))
        for a, b in steps:
            lines.append(f'  "{format_vertex(a)}" -- "{format_vertex(b)}" [color={color}];')
    lines.append("}")
    return "\n".join(lines)


def _faults(args) -> FaultSet:
    n = args.n
    vs, es = set(), set()
    if args.faults:
        F = FaultSet.from_text(n, Path(args.faults).read_text())
        vs |= F.vertices
        es |= F.edges
    vs |= {parse_vertex(s, n) for s in args.fault_vertex or ()}
    es |= {parse_edge(s, n) for s in args.fault_edge or ()}
    return FaultSet(n, frozenset(vs), frozenset(es))


def _use_table(args) -> None:
    if getattr(args, "table", None):
        set_table(load_table(args.table))


def _emit(paths, fmt: str, closed: bool = False) -> None:
    if fmt == "dot":
        print(to_dot(paths, closed))
    else:
        for p in paths:
            print(format_path(p))


def cmd_solve_dpc(args) -> int:
    from .dpc_engine import dpc2_solve

    n = args.n
    if not args.pair or len(args.pair) != 2:
        raise DomainError("--pair must be given exactly twice")
    t = tuple(parse_pair(s, n) for s in args.pair)
    F = _faults(args)
    bound = max(n - 4, 0)
    if F.size() > bound:
        raise DomainError(f"{F.size()} faults exceed the bound |F| <= n-4 = {n - 4} for n = {n}")
    _use_table(args)
    d = dpc2_solve(n, F, t)
    _emit([d.p, d.q], args.format)
    return EXIT_OK


def cmd_solve_hampath(args) -> int:
    from .ham_engine import ham_path

    n = args.n
    u, v = parse_pair(args.endpoints, n)
    F = _faults(args)
    if F.size() > n - 3:
        raise DomainError(f"{F.size()} faults exceed the bound |F| <= n-3 = {n - 3}")
    _use_table(args)
    _emit([ham_path(n, F, u, v)], args.format)
    return EXIT_OK


def cmd_solve_hamcycle(args) -> int:
    from .ham_engine import ham_cycle

    n = args.n
    F = _faults(args)
    if F.size() > n - 2:
        raise DomainError(f"{F.size()} faults exceed the bound |F| <= n-2 = {n - 2}")
    _use_table(args)
    _emit([ham_cycle(n, F)], args.format, closed=True)
    return EXIT_OK


def cmd_verify(args) -> int:
    n = args.n
    lines = [ln.strip() for ln in Path(args.solution).read_text().splitlines() if ln.strip()]
    paths = [parse_path(ln, n) for ln in lines]
    kind = args.kind or ("dpc" if len(paths) == 2 else "path")
    R = Region.whole(n, _faults(args))
    want = {"dpc": 2, "path": 1, "cycle": 1}[kind]
    if len(paths) != want:
        raise DomainError(f"a {kind} solution has {want} line(s), found {len(paths)}")
    if kind == "dpc":
        if args.pair:
            if len(args.pair) != 2:
                raise DomainError("--pair must be given exactly twice")
            t = tuple(parse_pair(s, n) for s in args.pair)
        else:
            t = tuple((p[0], p[-1]) for p in paths)
        bad = verify_dpc(R, paths, t)
    elif kind == "path":
        u, v = parse_pair(args.endpoints, n) if args.endpoints else (None, None)
        bad = verify_ham_path(R, paths[0], u, v)
    else:
        bad = verify_ham_cycle(R, paths[0])
    if bad is not None:
        print(bad)
        return 1
    print("OK")
    return EXIT_OK


def cmd_build_table(args) -> int:
    def progress(i, total):
        print(f"{i}/{total}", file=sys.stderr)

    table = build_bp3_table(jobs=args.jobs, progress=progress)
    save_table(table, args.out)
    print(f"{len(table)} records, {table.solved()} solved, written to {args.out}")
    for key in table.unsolvable():
        print(f"no 2-DPC for configuration {key}")
    return EXIT_OK


def cmd_counterexample(args) -> int:
    n = args.n
    F, u, x, w = counterexample(n, args.kind)
    print(f"# BP_{n}, {args.kind}: w has live neighbours u and x only")
    sys.stdout.write(F.to_text())
    print(f"# u {format_vertex(u)}")
    print(f"# x {format_vertex(x)}")
    print(f"# w {format_vertex(w)}")
    print(f"# check_blocking {str(check_blocking(n, F, u, x, w)).lower()}")
    return EXIT_OK


def cmd_sweep(args) -> int:
    from .suites import SUITES

    fn = SUITES.get(args.suite)
    if fn is None:
        raise DomainError(f"unknown suite {args.suite!r}; choose from {', '.join(SUITES)}")
    kwargs = {"seed": args.seed}
    if args.samples is not None:
        kwargs["samples"] = args.samples
    if args.suite == "bp3-exhaustive":
        kwargs["jobs"] = args.jobs
        if not args.rebuild:
            kwargs["table"] = load_table(args.table) if args.table else get_table()
    else:
        _use_table(args)
    checks = fn(**kwargs)
    for c in checks:
        print(c.line())
    good = sum(c.ok for c in checks)
    print(f"{args.suite}: {good}/{len(checks)} checks passed")
    return EXIT_OK if good == len(checks) else 1


def _instance_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--fault-vertex", action="append", metavar="VERTEX")
    p.add_argument("--fault-edge", action="append", metavar='"VERTEX | VERTEX"')
    p.add_argument("--faults", metavar="FILE", help="fault file ('v <vertex>' / 'e <vertex> | <vertex>')")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="bpdpc", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve-dpc", help="paired 2-disjoint path cover")
    _instance_flags(p)
    p.add_argument("--pair", action="append", metavar='"U , V"')
    p.add_argument("--seed", type=int, default=0, help="accepted for scripting; solving is deterministic")
    p.add_argument("--format", choices=("text", "dot"), default="text")
    p.add_argument("--table", metavar="PATH")
    p.set_defaults(func=cmd_solve_dpc)

    p = sub.add_parser("solve-hampath", help="Hamiltonian path")
    _instance_flags(p)
    p.add_argument("--endpoints", required=True, metavar='"U , V"')
    p.add_argument("--format", choices=("text", "dot"), default="text")
    p.add_argument("--table", metavar="PATH")
    p.set_defaults(func=cmd_solve_hampath)

    p = sub.add_parser("solve-hamcycle", help="Hamiltonian cycle")
    _instance_flags(p)
    p.add_argument("--format", choices=("text", "dot"), default="text")
    p.add_argument("--table", metavar="PATH")
    p.set_defaults(func=cmd_solve_hamcycle)

    p = sub.add_parser("verify", help="check a solution file")
    _instance_flags(p)
    p.add_argument("--solution", required=True, metavar="FILE")
    p.add_argument("--kind", choices=("dpc", "path", "cycle"))
    p.add_argument("--pair", action="append", metavar='"U , V"')
    p.add_argument("--endpoints", metavar='"U , V"')
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("build-table", help="build the BP_3 cover table")
    p.add_argument("--out", required=True)
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_build_table)

    p = sub.add_parser("counterexample", help="fault set showing the fault bound is tight")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--kind", choices=("edges", "vertices"), default="edges")
    p.set_defaults(func=cmd_counterexample)

    p = sub.add_parser("sweep", help="run an acceptance suite")
    p.add_argument("--suite", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--samples", type=int)
    p.add_argument("--table", metavar="PATH")
    p.add_argument("--rebuild", action="store_true", help="bp3-exhaustive: rebuild instead of loading")
    p.add_argument("--jobs", type=int, default=1)
    p.set_defaults(func=cmd_sweep)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s")
    try:
        return args.func(args)
    except ConstructionError as exc:
        print(f"error: construction failed: {exc}", file=sys.stderr)
        return EXIT_INTERNAL
    except (DomainError, TableError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except BPError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
