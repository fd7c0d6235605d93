"""Command-line entry point.

Subcommands: gen, test, report, registry, verify. Every invocation is
deterministic: identical inputs and flags yield identical output bytes and
exit codes. Exit codes: 0 success; 1 usage; 2 I/O or parse failure;
3 strict-mode quality failure or verify difference.
"""
from __future__ import annotations

import argparse
import os
import sys
from pathlib import Path

from mtstreams._version import VERSION
from mtstreams.campaign import (
    DEFAULT_EXPECTED_FAIL_IDS,
    CampaignConfig,
    build_registry,
    classify_status,
    load_status_entries,
    read_results_jsonl,
    run_campaign,
    write_registry,
    write_results_jsonl,
)
from mtstreams.partition import (
    generate_indexed,
    generate_random_spacing,
    generate_sequence_splitting,
    write_status_set,
)
from mtstreams.reports import TABLES, render_report
from mtstreams.statusfile import StatusFormatError, verify_sets
from mtstreams.stats.battery import load_battery

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_QUALITY = 3

DEFAULT_EXPECTED = ",".join(sorted(DEFAULT_EXPECTED_FAIL_IDS))


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def _build_parser() -> _Parser:
    parser = _Parser(prog="mtstreams", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"mtstreams {VERSION}")
    sub = parser.add_subparsers(dest="command", metavar="COMMAND", parser_class=_Parser)

    gen = sub.add_parser("gen", help="generate a status set + manifest")
    gen.add_argument("--technique", required=True, choices=["split", "random", "indexed"])
    gen.add_argument("--count", type=int, required=True, help="number of statuses")
    gen.add_argument(
        "--seed",
        type=int,
        default=0,
        help="indexed: first seed; split: base seed; random: master seed (default 0)",
    )
    gen.add_argument(
        "--spacing",
        type=int,
        default=10**6,
        help="split only: draws between consecutive statuses (default 1000000)",
    )
    gen.add_argument("--out", required=True, help="output directory")
    gen.set_defaults(func=_cmd_gen)

    test = sub.add_parser("test", help="run a battery campaign")
    test.add_argument("--dir", action="append", default=[], help="directory of *.mts statuses (repeatable)")
    test.add_argument("--status", action="append", default=[], help="single status file (repeatable)")
    test.add_argument("--battery", default="mini-crush-v1", help="built-in name or battery JSON path (default mini-crush-v1)")
    test.add_argument("--mode", choices=["int", "real", "both"], default="both")
    test.add_argument(
        "--threshold",
        type=float,
        default=None,
        help="two-sided failure threshold epsilon (default: the battery's; 1e-10 for mini-crush-v1)",
    )
    test.add_argument("--jobs", type=int, default=os.cpu_count() or 1, help="worker count (default: logical cores); affects wall time only, never output bytes")
    test.add_argument("--out", default="results.jsonl", help="results JSONL path (default results.jsonl)")
    test.add_argument("--strict", action="store_true", help="exit 3 if any status is Suspect")
    test.add_argument(
        "--expected-fail",
        default=None,
        help=f"ids exempted from strict classification (default {DEFAULT_EXPECTED}, where present in the battery)",
    )
    test.set_defaults(func=_cmd_test)

    report = sub.add_parser("report", help="render campaign tables")
    report.add_argument("--results", required=True, help="results JSONL path")
    report.add_argument("--tables", default=",".join(TABLES), help=f"comma list from {{{','.join(TABLES)}}} (default all)")
    report.add_argument("--format", choices=["md", "csv", "json"], default="md")
    report.add_argument("--expected-fail", default=None, help=f"classification exemptions (default {DEFAULT_EXPECTED}, where present in the battery)")
    report.add_argument("--out", default=None, help="write to file instead of stdout")
    report.set_defaults(func=_cmd_report)

    registry = sub.add_parser("registry", help="write the Good-status registry")
    registry.add_argument("--results", required=True, help="results JSONL path")
    registry.add_argument("--expected-fail", default=None, help=f"expected-failure ids (default {DEFAULT_EXPECTED}, where present in the battery)")
    registry.add_argument("--out", required=True, help="registry text path; a .json twin is written beside it")
    registry.set_defaults(func=_cmd_registry)

    verify = sub.add_parser("verify", help="byte-compare two status directories")
    verify.add_argument("--dir", action="append", default=[], help="directory (give exactly twice)")
    verify.set_defaults(func=_cmd_verify)

    return parser


def _cmd_gen(args: argparse.Namespace) -> int:
    if args.count < 1:
        raise UsageError(f"--count must be >= 1, got {args.count}")
    try:
        if args.technique == "split":
            if args.spacing < 1:
                raise UsageError(f"--spacing must be > 0 for split, got {args.spacing}")
            sset = generate_sequence_splitting(args.seed, args.spacing, args.count)
        elif args.technique == "random":
            sset = generate_random_spacing(args.seed, args.count)
        else:
            sset = generate_indexed(args.seed, args.count)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    fingerprint = write_status_set(sset, args.out)
    print(f"{args.technique} x{args.count} -> {args.out}")
    print(f"fingerprint {fingerprint}")
    return EXIT_OK


def _parse_expected(raw: str) -> frozenset[str]:
    ids = frozenset(s for s in (part.strip() for part in raw.split(",")) if s)
    return ids


def _resolve_expected(raw: str | None, available_ids) -> frozenset[str]:
    """Expected-failure ids: explicit values are validated strictly, while
    the built-in default applies only where the battery defines those ids."""
    if raw is None:
        return DEFAULT_EXPECTED_FAIL_IDS & set(available_ids)
    expected = _parse_expected(raw)
    unknown = expected - set(available_ids)
    if unknown:
        raise UsageError(f"--expected-fail ids not in battery: {sorted(unknown)}")
    return expected


def _cmd_test(args: argparse.Namespace) -> int:
    inputs = list(args.dir) + list(args.status)
    if not inputs:
        raise UsageError("give at least one --dir or --status")
    if args.threshold is not None and not 0.0 < args.threshold < 0.5:
        raise UsageError(f"--threshold must be in (0, 0.5), got {args.threshold}")
    if args.jobs < 1:
        raise UsageError(f"--jobs must be >= 1, got {args.jobs}")
    battery = load_battery(args.battery)
    modes = ("int", "real") if args.mode == "both" else (args.mode,)
    expected = _resolve_expected(args.expected_fail, battery.test_ids)
    entries = load_status_entries(inputs)
    config = CampaignConfig(battery=battery, modes=modes, threshold=args.threshold, jobs=args.jobs)
    creport = run_campaign(entries, config)
    write_results_jsonl(creport, args.out)
    suspects = [r for r in creport.reports if classify_status(r, expected) == "Suspect"]
    print(f"tested {len(entries)} statuses x {len(modes)} modes with {battery.name}")
    print(f"wrote {args.out} ({len(creport.reports)} unit reports)")
    print(f"fingerprint {creport.meta['fingerprint']}")
    print(f"suspect units: {len(suspects)}")
    if args.strict and suspects:
        return EXIT_QUALITY
    return EXIT_OK


def _cmd_report(args: argparse.Namespace) -> int:
    creport = read_results_jsonl(args.results)
    tables = [t.strip() for t in args.tables.split(",") if t.strip()]
    expected = _resolve_expected(args.expected_fail, creport.meta.get("test_ids", []))
    try:
        text = render_report(creport, tables, args.format, expected)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    if args.out is None:
        sys.stdout.write(text)
    else:
        Path(args.out).write_bytes(text.encode("ascii"))
        print(f"wrote {args.out}")
    return EXIT_OK


def _cmd_registry(args: argparse.Namespace) -> int:
    creport = read_results_jsonl(args.results)
    expected = _resolve_expected(args.expected_fail, creport.meta.get("test_ids", []))
    try:
        registry = build_registry(creport, expected)
    except ValueError as exc:
        raise UsageError(str(exc)) from exc
    text_path = Path(args.out)
    if text_path.suffix == ".json":
        json_path = text_path
        text_path = text_path.with_suffix(".txt")
    else:
        json_path = text_path.with_suffix(".json")
    write_registry(registry, text_path, json_path)
    print(f"registry: {len(registry.entries)} Good statuses -> {text_path}, {json_path}")
    return EXIT_OK


def _cmd_verify(args: argparse.Namespace) -> int:
    if len(args.dir) != 2:
        raise UsageError("verify needs exactly two --dir arguments")
    report = verify_sets(args.dir[0], args.dir[1])
    for rel in report.differing:
        print(f"differs: {rel}")
    for rel in report.only_a:
        print(f"only in {args.dir[0]}: {rel}")
    for rel in report.only_b:
        print(f"only in {args.dir[1]}: {rel}")
    print(
        f"{len(report.identical)} identical, {len(report.differing)} differing, "
        f"{len(report.only_a) + len(report.only_b)} unmatched"
    )
    return EXIT_OK if report.ok else EXIT_QUALITY


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        if not getattr(args, "func", None):
            raise UsageError("missing command (try --help)")
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (StatusFormatError, FileNotFoundError, NotADirectoryError, PermissionError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (OSError, UnicodeDecodeError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
