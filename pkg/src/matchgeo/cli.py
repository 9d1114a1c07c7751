"""matchgeo command line: compile, verify, analyze.

Exit codes: 0 ok, 1 verification failed, 2 parse error, 3 compilation error,
4 resource limit.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import io
from .analyzer import analyze, describe
from .compiler import compile
from .errors import CompilationError, ParseError, ResourceLimitError
from .placement import DEFAULT_BUDGET, Strategy
from .verify import verify

EXIT_OK, EXIT_VERIFY, EXIT_PARSE, EXIT_COMPILE, EXIT_RESOURCE = 0, 1, 2, 3, 4


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise ParseError(f"cannot read {path}: {exc.strerror}") from None


def _fail(code: int, msg: str) -> int:
    print(f"error: {msg}", file=sys.stderr)
    return code


def cmd_compile(args) -> int:
    try:
        circuit = io.loads_circuit(_read(args.circuit))
        graph = io.loads_graph(_read(args.graph))
    except ParseError as exc:
        return _fail(EXIT_PARSE, str(exc))
    try:
        schedule, report = compile(circuit, graph, args.strategy, budget=args.budget)
    except CompilationError as exc:
        return _fail(EXIT_COMPILE, str(exc))
    Path(args.out).write_text(io.dumps_schedule(schedule))
    print(f"strategy: {schedule.strategy}")
    for line in report.lines():
        print(line)
    print(f"schedule written to {args.out}")
    return EXIT_OK


def cmd_verify(args) -> int:
    try:
        circuit = io.loads_circuit(_read(args.circuit))
        schedule = io.loads_schedule(_read(args.schedule))
    except ParseError as exc:
        return _fail(EXIT_PARSE, str(exc))
    try:
        report = verify(circuit, schedule, tol=args.tol)
    except ResourceLimitError as exc:
        return _fail(EXIT_RESOURCE, f"unverifiable at desk scale: {exc}")
    except ValueError as exc:
        return _fail(EXIT_PARSE, str(exc))
    for line in report.lines():
        print(line)
    return EXIT_OK if report.passed else EXIT_VERIFY


def cmd_analyze(args) -> int:
    try:
        graph = io.loads_graph(_read(args.graph))
    except ParseError as exc:
        return _fail(EXIT_PARSE, str(exc))
    if args.k < 1:
        return _fail(EXIT_PARSE, "--k must be at least 1")
    result = analyze(graph, args.k, args.budget)
    for line in describe(result):
        print(line)
    if args.out:
        Path(args.out).write_text(io.dumps_certificates(result.certificates) + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="matchgeo", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("compile", help="compile a circuit onto a graph")
    c.add_argument("--circuit", required=True)
    c.add_argument("--graph", required=True)
    c.add_argument("--strategy", default="auto", choices=["auto"] + [s.value for s in Strategy])
    c.add_argument("--out", required=True)
    c.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    c.set_defaults(func=cmd_compile)

    v = sub.add_parser("verify", help="check a schedule against its circuit")
    v.add_argument("--circuit", required=True)
    v.add_argument("--schedule", required=True)
    v.add_argument("--tol", type=float, default=1e-8)
    v.set_defaults(func=cmd_verify)

    a = sub.add_parser("analyze", help="search for universality certificates")
    a.add_argument("--graph", required=True)
    a.add_argument("--k", type=int, required=True)
    a.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    a.add_argument("--out", help="also write certificates as JSON")
    a.set_defaults(func=cmd_analyze)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    sys.exit(main())
