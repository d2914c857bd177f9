"""Command-line front end.

Exit codes: 0 success, 1 verification failure, 2 malformed input,
3 numerical-health error.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from .errors import LoewnerError, NumericalHealthError
from .formats import (
    drive_svg,
    read_drive_csv,
    read_trace,
    trace_svg,
    write_drive_csv,
    write_trace,
)
from .forward import compute_trace
from .zipper import refine_polyline, unzip
from . import verify

EXIT_OK, EXIT_VIOLATION, EXIT_INPUT, EXIT_NUMERIC = 0, 1, 2, 3


def cmd_forward(args) -> int:
    drive = read_drive_csv(args.drive_file, speed=args.speed)
    trace = compute_trace(drive, args.steps)
    write_trace(args.out_file, trace, reverse_time=args.reverse_time)
    if args.svg:
        Path(args.svg).write_text(trace_svg(trace))
    return EXIT_OK


def cmd_inverse(args) -> int:
    trace = read_trace(args.trace_file)
    speed = trace.speed if args.speed is None else args.speed
    slit = refine_polyline(trace.to_polyline(), args.max_height)
    drive, _ = unzip(slit, speed)
    write_drive_csv(args.out_file, drive, reverse_time=args.reverse_time)
    if args.svg:
        Path(args.svg).write_text(drive_svg(drive))
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.cases < 1:
        print("cases must be >= 1", file=sys.stderr)
        return EXIT_INPUT
    rows = verify.run_suite(args.seed, args.cases, tol=args.tol, fault=args.inject_fault)
    print(verify.format_table(rows))
    return EXIT_OK if all(r.ok for r in rows) else EXIT_VIOLATION


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="loewner", description="Chordal Loewner forward/inverse toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    fwd = sub.add_parser("forward", help="driving CSV -> trace document")
    fwd.add_argument("drive_file")
    fwd.add_argument("out_file")
    fwd.add_argument("--steps", type=int, default=4096)
    fwd.add_argument("--speed", type=float, choices=(1.0, 2.0), default=1.0)
    fwd.add_argument("--svg")
    fwd.add_argument("--reverse-time", action="store_true", help="write tau = T - t (growth convention)")
    fwd.set_defaults(func=cmd_forward)

    inv = sub.add_parser("inverse", help="trace document -> driving CSV")
    inv.add_argument("trace_file")
    inv.add_argument("out_file")
    inv.add_argument("--max-height", type=float, default=0.01)
    inv.add_argument("--speed", type=float, choices=(1.0, 2.0), default=None)
    inv.add_argument("--svg")
    inv.add_argument("--reverse-time", action="store_true", help="write tau = T - t (growth convention)")
    inv.set_defaults(func=cmd_inverse)

    ver = sub.add_parser("verify", help="run the randomised invariant suite")
    ver.add_argument("--seed", type=int, default=42)
    ver.add_argument("--cases", type=int, default=10)
    ver.add_argument("--tol", type=float, default=1e-9)
    ver.add_argument("--inject-fault", action="store_true", help=argparse.SUPPRESS)
    ver.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    if getattr(args, "steps", 1) < 1 or getattr(args, "max_height", 1.0) <= 0:
        print("--steps must be >= 1 and --max-height > 0", file=sys.stderr)
        return EXIT_INPUT
    try:
        return args.func(args)
    except NumericalHealthError as exc:
        print(f"numerical error: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except (LoewnerError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
