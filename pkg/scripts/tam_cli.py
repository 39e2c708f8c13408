#!/usr/bin/env python3
"""
Command-line surface of the Tile Assembly Path Analyzer.

Usage:
    python scripts/tam_cli.py classify FIX-RAY
    python scripts/tam_cli.py canonical --column 1 fixtures/FIX-SPAN.json
    python scripts/tam_cli.py cuts --path path.json FIX-SPAN
    python scripts/tam_cli.py verify --suite all --samples 50 --rng-seed 0 --report report.json
    python scripts/tam_cli.py verify --suite assembly --exhaustive --max-tiles 2 --alphabet-size 3

Systems are fixture names or tile-system JSON files. Output goes to stdout
as JSON with sorted keys unless --format asks for ascii or svg.
Exit codes: 0 success, 1 domain error, 2 usage error, 3 budget exceeded.
"""

import argparse
import json
import logging
import sys
from pathlib import Path
from typing import Any, List, Optional

sys.path.insert(0, str(Path(__file__).resolve().parent.parent))

from app.core.exceptions import EXIT_USAGE, TamError, UsageError  # noqa: E402
from app.core.models import OutputFormat, VerticalSide  # noqa: E402
from app.core.services import analysis_service, exit_code_for  # noqa: E402
from app.logging_config import configure_logging  # noqa: E402

logger = logging.getLogger(__name__)


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise UsageError(message)


def _read_json(path: Optional[str]) -> Any:
    if path is None:
        return None
    try:
        with open(path, "r", encoding="utf-8") as f:
            return json.load(f)
    except FileNotFoundError:
        raise UsageError(f"no such file: {path}", path=path)
    except json.JSONDecodeError as e:
        raise UsageError(f"{path} is not valid JSON: {e.msg}", path=path)


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="tam_cli", description="Temperature-1 tile assembly path analyzer")
    parser.add_argument("--log-level", default=None, help="Overrides LOG_LEVEL, e.g. DEBUG")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def command(name: str, help_text: str, path: bool = False) -> argparse.ArgumentParser:
        p = sub.add_parser(name, help=help_text)
        p.add_argument("system", help="Fixture name or tile-system JSON file")
        p.add_argument("--budget", type=int, default=None, help="Search budget (saturation cap for run)")
        p.add_argument("--format", choices=[f.value for f in OutputFormat], default=OutputFormat.JSON.value)
        if path:
            p.add_argument("--path", default=None, help="JSON file holding a path")
            p.add_argument("--input", default=None, help="Any emitted JSON document with a 'path' entry")
        return p

    command("classify", "Classify as finite, infinite or non-directed")
    command("run", "Saturate with --budget as the cap")
    paths = command("paths", "Enumerate producible paths")
    paths.add_argument("--max-len", type=int, default=6)
    command("cuts", "List the cuts of a path with their flags", path=True)
    decompose = command("decompose", "Span or dominant-arc decomposition on a column", path=True)
    decompose.add_argument("--column", type=int, required=True)
    decompose.add_argument("--side", choices=[s.value for s in VerticalSide], default=VerticalSide.SOUTH.value)
    decompose.add_argument("--arcs", action="store_true", help="Dominant-arc decomposition instead of spans")
    canonical = command("canonical", "Canonical path and its spans on a column")
    canonical.add_argument("--column", type=int, required=True)
    canonical.add_argument("--strict", action="store_true", help="Enforce the column window")
    shield = command("shield", "Verify a candidate shield", path=True)
    shield.add_argument("--column", type=int, required=True)
    shield.add_argument("--s-index", type=int, required=True)
    shield.add_argument("--candidate", required=True, help="JSON file holding the candidate path")
    shield.add_argument("--shield-column", type=int, default=None, help="Override for L(c)")
    command("render", "Draw the assembly and an optional path", path=True)

    verify = sub.add_parser("verify", help="Run registered statement checks")
    verify.add_argument("--suite", default="all", help="Check id, suite name or 'all'")
    verify.add_argument("--samples", type=int, default=None)
    verify.add_argument("--rng-seed", type=int, default=None)
    verify.add_argument("--exhaustive", action="store_true", help="Every system up to renaming glue labels instead of samples")
    verify.add_argument("--max-tiles", type=int, default=None, help="Largest tile set of generated systems")
    verify.add_argument("--alphabet-size", type=int, default=None, help="Glue labels of generated systems")
    verify.add_argument("--budget", type=int, default=None)
    verify.add_argument("--report", default=None, help="Write the verdicts to this JSON file")
    verify.add_argument("--input", default=None, help="Witness JSON to replay against --suite")
    verify.add_argument("--format", choices=[OutputFormat.JSON.value], default=OutputFormat.JSON.value)
    return parser


def dispatch(args: argparse.Namespace) -> Any:
    svc = analysis_service
    fmt = OutputFormat(args.format)
    if args.command == "verify":
        return svc.verify(args.suite, args.samples, args.rng_seed, args.budget, args.report, _read_json(args.input),
                          exhaustive=args.exhaustive, max_tiles=args.max_tiles, alphabet_size=args.alphabet_size)
    if args.command == "classify":
        return svc.classify(args.system)
    if args.command == "run":
        return svc.run(args.system, args.budget)
    if args.command == "paths":
        return svc.paths(args.system, args.max_len, args.budget)

    path = _read_json(args.input) if getattr(args, "input", None) else _read_json(getattr(args, "path", None))
    if args.command == "cuts":
        if path is None:
            raise UsageError("cuts needs --path or --input")
        return svc.cuts(args.system, path, args.budget)
    if args.command == "decompose":
        doc = svc.decompose(args.system, args.column, path, VerticalSide(args.side), args.arcs, args.budget)
        return svc.decompose_table(args.system, doc) if fmt is OutputFormat.ASCII else doc
    if args.command == "canonical":
        return svc.canonical(args.system, args.column, args.strict, args.budget)
    if args.command == "shield":
        if path is None:
            raise UsageError("shield needs --path or --input")
        return svc.shield(args.system, path, args.column, args.s_index, _read_json(args.candidate),
                          args.shield_column, args.budget)
    if args.command == "render":
        return svc.render(args.system, path, fmt, args.budget)
    raise UsageError(f"unknown command {args.command!r}")


def emit(doc: Any) -> None:
    if isinstance(doc, str):
        sys.stdout.write(doc)
    else:
        sys.stdout.write(json.dumps(doc, sort_keys=True, default=str) + "\n")


def main(argv: Optional[List[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        configure_logging(args.log_level)
        doc = dispatch(args)
    except TamError as e:
        logger.debug(f"{e.name}: {e.message}")
        emit(e.to_dict())
        return e.code
    except SystemExit as e:
        # --help
        return int(e.code or 0) if isinstance(e.code, int) else EXIT_USAGE
    emit(doc)
    return exit_code_for(args.command, doc)


if __name__ == "__main__":
    sys.exit(main())
