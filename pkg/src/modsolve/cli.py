"""Command-line front end.

Exit codes: 0 success, 1 bad input or usage, 2 not zero-dimensional,
3 verification failed (or the modular loop gave up).
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from importlib.resources import files
from pathlib import Path
from typing import Optional, Sequence

from .ideals import DimensionError, Ideal
from .modular import ModularFailure
from .parser import ParseError, parse_system
from .pipeline import RunConfig, RunResult, run_pipeline
from .unisolve import DEFAULT_RESIDUAL_TOL, DEFAULT_TOL

EXIT_OK = 0
EXIT_INPUT = 1
EXIT_NOT_ZERO_DIM = 2
EXIT_VERIFY = 3


def bundled_systems() -> dict[str, Path]:
    """Named systems shipped with the package (``cyclic5``, ``example``, ...)."""
    root = files("modsolve.systems")
    return {p.name[:-4]: Path(str(p)) for p in root.iterdir() if p.name.endswith(".sys")}


def _positive_int(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(
        prog="modsolve",
        description="Solve a zero-dimensional polynomial system over Q via a "
                    "modular triangular decomposition.")
    ap.add_argument("system", nargs="?",
                    help="system file, '-' for stdin, or the name of a bundled system")
    ap.add_argument("--mode", choices=("modular", "direct"), default="modular")
    ap.add_argument("--primes", type=_positive_int, default=10, metavar="T",
                    help="primes per round (default 10)")
    ap.add_argument("--jobs", type=_positive_int, default=1, metavar="C",
                    help="worker processes (default 1)")
    ap.add_argument("--tol", type=_positive_float, default=DEFAULT_TOL,
                    help="root clustering tolerance (default %(default)g)")
    ap.add_argument("--residual-tol", type=_positive_float, default=DEFAULT_RESIDUAL_TOL,
                    help="acceptance bound on residuals (default %(default)g)")
    ap.add_argument("--seed", type=int, default=None, help="prime stream seed")
    ap.add_argument("--max-rounds", type=_positive_int, default=50)
    ap.add_argument("--decomposition-only", action="store_true")
    ap.add_argument("--disjoint", action="store_true",
                    help="pairwise comaximal sets (multiplicities not kept)")
    ap.add_argument("--format", choices=("json", "text"), default="json")
    ap.add_argument("--verbose", "-v", action="store_true",
                    help="stream progress events on stderr")
    ap.add_argument("--list-systems", action="store_true", help="list bundled systems")
    return ap


def _read_system(arg: str) -> str:
    if arg == "-":
        return sys.stdin.read()
    path = Path(arg)
    if path.exists():
        return path.read_text(encoding="utf-8")
    named = bundled_systems()
    if arg in named:
        return named[arg].read_text(encoding="utf-8")
    raise FileNotFoundError(f"no such file or bundled system: {arg}")


def render_text(result: RunResult) -> str:
    out = [f"variables: {' '.join(result.ideal.ring.variables)}",
           f"dimension: {result.dimension}",
           f"triangular sets: {len(result.decomposition)}"]
    for k, F in enumerate(result.decomposition):
        out.append(f"  F{k + 1} (vdim {F.vdim()}):")
        out.extend(f"    {f}" for f in F.strings())
    if result.solutions is not None:
        out.append(f"solutions: {len(result.solutions)} points, "
                   f"total multiplicity {result.solutions.total_multiplicity}")
        for P in result.solutions:
            coords = ", ".join(f"{c.real:.12g}{c.imag:+.12g}i" for c in P.coordinates)
            note = f"  shared with {list(P.shared_with)}" if P.shared_with else ""
            out.append(f"  F{P.set_index + 1} mult {P.multiplicity}: ({coords})  "
                       f"residual {P.residual:.3g}{note}")
        out.append(f"verified: {result.verified}")
        if result.report is not None:
            out.extend(f"  failed: {msg}" for msg in result.report.failures)
    out.append(f"rounds: {result.rounds}  primes used: {result.primes_used}  "
               f"wall: {result.wall_seconds:.3f}s")
    return "\n".join(out)


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    if args.list_systems:
        for name in sorted(bundled_systems()):
            print(name)
        return EXIT_OK
    if args.system is None:
        build_parser().print_usage(sys.stderr)
        print("modsolve: error: a system file is required", file=sys.stderr)
        return EXIT_INPUT
    logging.basicConfig(level=logging.WARNING, stream=sys.stderr)

    try:
        ring, gens = parse_system(_read_system(args.system))
    except (ParseError, OSError) as exc:
        print(f"modsolve: {exc}", file=sys.stderr)
        return EXIT_INPUT

    config = RunConfig(mode=args.mode, primes_per_round=args.primes, jobs=args.jobs,
                       tol=args.tol, residual_tol=args.residual_tol, seed=args.seed,
                       decomposition_only=args.decomposition_only,
                       disjoint=args.disjoint, max_rounds=args.max_rounds)
    on_event = (lambda ev: print(ev, file=sys.stderr, flush=True)) if args.verbose else None
    try:
        result = run_pipeline(Ideal(gens, ring), config, on_event)
    except DimensionError as exc:
        print(f"modsolve: not zero-dimensional: {exc}", file=sys.stderr)
        return EXIT_NOT_ZERO_DIM
    except ModularFailure as exc:
        print(f"modsolve: {exc}", file=sys.stderr)
        return EXIT_VERIFY

    if args.format == "json":
        print(json.dumps(result.to_json(), indent=2))
    else:
        print(render_text(result))
    if result.verified is False:
        for msg in result.report.failures:
            print(f"modsolve: verification failed: {msg}", file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
