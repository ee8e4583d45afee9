"""Command-line entry point: validate, generate, evaluate, trace, timeline.

Exit status is 0 on success, 1 when validation, generation or a metric
fails, and 2 for usage errors or unreadable/malformed input files.
"""

from __future__ import annotations

import argparse
import json
import os
import re
import sys
import tempfile
from pathlib import Path
from typing import Optional, Sequence

from .core import ScheduleFormatError, format_time, parse_time
from .environment import (
    DEFAULT_SAMPLE_HZ,
    DEFAULT_SPEED,
    NoPathError,
    UnmappedActivityError,
    generate_trace,
    load_environment,
)
from .formats import DEFAULT_GAP_ACTIVITY, load_reference_collection, load_template, save_schedules
from .generator import GenerationError, generate_collection
from .similarity import CoverageError, MetricError, baseline_collection, default_window, sim_cross, sim_self
from .timeline import render_timeline
from .validator import validate_template

SEED_ENV = "PERSONA_SCHED_SEED"
BASELINE_DAYS = 10

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _read(path: Path) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror or exc}") from None


def write_atomic(path: Path, text: str) -> None:
    """Write via a temp file in the target directory, then rename into place."""
    path = Path(path)
    fd, tmp = tempfile.mkstemp(dir=path.parent or ".", prefix=f".{path.name}.", suffix=".tmp")
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def _parse_window(text: str):
    m = re.fullmatch(r"(\d{2}:\d{2})-(\d{2}:\d{2})", text)
    if m is None:
        raise argparse.ArgumentTypeError("window must look like HH:MM-HH:MM")
    try:
        lo, hi = parse_time(m.group(1)), parse_time(m.group(2))
    except ScheduleFormatError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None
    if lo >= hi:
        raise argparse.ArgumentTypeError("window start must precede its end")
    return lo, hi


def _default_seed() -> int:
    raw = os.environ.get(SEED_ENV)
    if raw is None:
        return 0
    try:
        return int(raw)
    except ValueError:
        raise UsageError(f"{SEED_ENV}={raw!r} is not an integer") from None


def cmd_validate(args) -> int:
    report = validate_template(load_template(_read(args.template)))
    sys.stdout.write(report.to_json() if args.json else report.to_text())
    return EXIT_OK if report.valid else EXIT_FAIL


def cmd_generate(args) -> int:
    if args.days < 1:
        raise UsageError("--days must be at least 1")
    seed = _default_seed() if args.seed is None else args.seed
    if not 0 <= seed < 2**64:
        raise UsageError("--seed must be a 64-bit unsigned integer")
    template = load_template(_read(args.template))
    try:
        collection = generate_collection(template, args.days, seed)
    except GenerationError as exc:
        print(f"error: generation failed: {exc.kind} at entry {exc.entry_index}: {exc.detail}",
              file=sys.stderr)
        return EXIT_FAIL
    write_atomic(args.out, save_schedules(collection))
    return EXIT_OK


def cmd_evaluate(args) -> int:
    generated = load_reference_collection(_read(args.generated), args.gap_activity)
    reference = load_reference_collection(_read(args.reference), args.gap_activity)
    seed = _default_seed() if args.baseline_seed is None else args.baseline_seed
    try:
        window = args.window or default_window(generated, reference)
        baseline = baseline_collection(reference.activity_vocabulary, BASELINE_DAYS, seed)
        result = {
            "window": f"{format_time(window[0])}-{format_time(window[1])}",
            "sim_cross": round(sim_cross(generated, reference, window), 6),
            "pairs": len(generated) * len(reference),
            "sim_self_reference": round(sim_self(reference, window), 6),
            "sim_cross_baseline": round(sim_cross(baseline, reference, window), 6),
        }
    except (MetricError, CoverageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    text = json.dumps(result, indent=2) + "\n"
    if args.out:
        write_atomic(args.out, text)
    sys.stdout.write(text)
    return EXIT_OK


def cmd_trace(args) -> int:
    collection = load_reference_collection(_read(args.schedule), args.gap_activity)
    if not 0 <= args.day < len(collection):
        raise UsageError(f"--day {args.day} out of range (collection has {len(collection)} days)")
    if not args.speed > 0 or not args.hz > 0:
        raise UsageError("--speed and --hz must be positive")
    sidecar = args.locations or Path(args.floorplan).with_suffix(".json")
    env = load_environment(_read(args.floorplan), _read(sidecar))
    try:
        trace = generate_trace(collection.days[args.day], env, args.speed, args.hz)
    except (UnmappedActivityError, NoPathError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    for w in trace.warnings:
        print(f"warning: {w}", file=sys.stderr)
    write_atomic(args.out, trace.to_csv())
    return EXIT_OK


def cmd_timeline(args) -> int:
    collections = [load_reference_collection(_read(p), args.gap_activity) for p in args.collections]
    try:
        svg = render_timeline(collections)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    write_atomic(args.out, svg)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="persona-sched",
        description="Generate, validate, compare and render daily activity schedules.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="check a schedule template")
    p.add_argument("template", type=Path)
    p.add_argument("--json", action="store_true", help="emit the report as JSON")
    p.set_defaults(func=cmd_validate)

    p = sub.add_parser("generate", help="generate daily schedules from a template")
    p.add_argument("template", type=Path)
    p.add_argument("--days", type=int, required=True)
    p.add_argument("--seed", type=int, default=None, help=f"default: ${SEED_ENV} or 0")
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("evaluate", help="similarity of generated vs reference schedules")
    p.add_argument("--generated", type=Path, required=True)
    p.add_argument("--reference", type=Path, required=True)
    p.add_argument("--baseline-seed", type=int, default=None)
    p.add_argument("--window", type=_parse_window, default=None, help="HH:MM-HH:MM")
    p.add_argument("--gap-activity", default=DEFAULT_GAP_ACTIVITY)
    p.add_argument("--out", type=Path, default=None, help="also write the JSON here")
    p.set_defaults(func=cmd_evaluate)

    p = sub.add_parser("trace", help="render one day as a location trace CSV")
    p.add_argument("schedule", type=Path)
    p.add_argument("floorplan", type=Path)
    p.add_argument("--locations", type=Path, default=None,
                   help="JSON sidecar (default: floorplan path with .json suffix)")
    p.add_argument("--day", type=int, default=0)
    p.add_argument("--speed", type=float, default=DEFAULT_SPEED, help="metres per second")
    p.add_argument("--hz", type=float, default=DEFAULT_SAMPLE_HZ, help="samples per second")
    p.add_argument("--gap-activity", default=DEFAULT_GAP_ACTIVITY)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_trace)

    p = sub.add_parser("timeline", help="draw collections as an SVG timeline")
    p.add_argument("collections", type=Path, nargs="+")
    p.add_argument("--gap-activity", default=DEFAULT_GAP_ACTIVITY)
    p.add_argument("--out", type=Path, required=True)
    p.set_defaults(func=cmd_timeline)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (UsageError, ScheduleFormatError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
