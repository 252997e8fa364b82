"""Command line interface.

Subcommands:

    opinion    map evidence counts to an opinion and its expectation
    fuse       combine two opinion literals with one operator
    run        evaluate a named scenario plan over a topic file
    validate   run the oracle suite and report pass/fail

Exit codes: 0 success, 2 bad flags or unreadable inputs, 3 undefined
fusion (two dogmatic opinions), 4 malformed topic file, 5 plan parse
failure or unknown scenario, 6 oracle failure.  All commands are
deterministic given identical inputs and seeds.  The ``POLYREP_LOG``
environment variable sets the log level (debug, info, warning, error).
"""

from __future__ import annotations

import argparse
import logging
import os
import sys

from .errors import (
    ConstraintViolation,
    FusionError,
    LexiconUnavailable,
    MalformedTopic,
    ParseError,
    PolyrepError,
)
from .evidence import ExtractorConfig
from .opinions import EvidenceCount, Opinion, expectation, from_evidence
from .fusion import consensus, recommend
from .oracle import MIN_SAMPLES, render_reports, run_suite
from .plans import parse_scenarios
from .runs import RunError, RunOutput, error_line, machine_line, render_table, run_topic
from .topics import parse_topics

__all__ = ["main", "run", "build_parser"]

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_FUSION = 3
EXIT_TOPIC = 4
EXIT_PLAN = 5
EXIT_ORACLE = 6

log = logging.getLogger("polyrep.cli")


def _f6(x: float) -> str:
    return format(x, ".6f")


def _fail(code: int, message: str) -> int:
    print(f"polyrep: error: {message}", file=sys.stderr)
    return code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="polyrep",
        description="Belief fusion over polyrepresented information needs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_opinion = sub.add_parser("opinion", help="map evidence counts to an opinion")
    p_opinion.add_argument("--r", type=float, required=True, help="positive evidence count")
    p_opinion.add_argument("--s", type=float, required=True, help="negative evidence count")
    p_opinion.add_argument("--a", type=float, default=0.5, help="base rate in [0, 1] (default 0.5)")

    p_fuse = sub.add_parser("fuse", help="combine two opinion literals")
    p_fuse.add_argument("--op", choices=("consensus", "recommend"), required=True)
    p_fuse.add_argument("first", help="opinion literal 'b,d,u,a'")
    p_fuse.add_argument("second", help="opinion literal 'b,d,u,a'")

    p_run = sub.add_parser("run", help="evaluate a scenario plan over a topic file")
    p_run.add_argument("--topics", required=True, help="topic file")
    p_run.add_argument("--scenarios", required=True, help="scenario configuration file")
    p_run.add_argument("--scenario", required=True, help="scenario name to evaluate")
    p_run.add_argument("--lexicon", default=None, help="term<TAB>sense_count lexicon file")
    p_run.add_argument("--stopwords", default=None, help="stopword list, one term per line")
    p_run.add_argument("--base-rate", type=float, default=0.5, dest="base_rate")
    p_run.add_argument("--machine", action="store_true", help="emit tab-separated lines")
    p_run.add_argument(
        "--strict", action="store_true", help="turn any per-topic error into a nonzero exit"
    )

    p_validate = sub.add_parser("validate", help="run the oracle suite")
    p_validate.add_argument("--seed", type=int, default=42, help="64-bit suite seed (default 42)")
    p_validate.add_argument(
        "--samples", type=int, default=1_000_000,
        help=f"Monte-Carlo samples per check, at least {MIN_SAMPLES} (default 1000000)",
    )
    return parser


def _parse_literal(text: str) -> Opinion:
    parts = text.split(",")
    if len(parts) != 4:
        raise ConstraintViolation(f"opinion literal must be 'b,d,u,a', got {text!r}")
    values = []
    for part in parts:
        try:
            values.append(float(part))
        except ValueError:
            raise ConstraintViolation(f"not a number in opinion literal: {part!r}") from None
    return Opinion("", "", *values)


def _cmd_opinion(args: argparse.Namespace) -> int:
    try:
        op = from_evidence("cli", "cli", EvidenceCount(args.r, args.s), args.a)
    except ConstraintViolation as exc:
        return _fail(EXIT_USAGE, str(exc))
    print(
        f"b={_f6(op.belief)} d={_f6(op.disbelief)} u={_f6(op.uncertainty)} "
        f"a={_f6(op.base_rate)} E={_f6(expectation(op))}"
    )
    return EXIT_OK


def _cmd_fuse(args: argparse.Namespace) -> int:
    try:
        first = _parse_literal(args.first)
        second = _parse_literal(args.second)
    except ConstraintViolation as exc:
        return _fail(EXIT_USAGE, str(exc))
    try:
        fused = consensus(first, second) if args.op == "consensus" else recommend(first, second)
    except FusionError as exc:
        return _fail(EXIT_FUSION, str(exc))
    print(",".join(_f6(v) for v in fused.components))
    return EXIT_OK


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as handle:
        return handle.read()


def _cmd_run(args: argparse.Namespace) -> int:
    try:
        topics_text = _read(args.topics)
        scenarios_text = _read(args.scenarios)
    except OSError as exc:
        return _fail(EXIT_USAGE, str(exc))
    cfg = ExtractorConfig(args.lexicon, args.stopwords)
    try:
        cfg.load()
    except LexiconUnavailable as exc:
        return _fail(EXIT_USAGE, str(exc))
    if not 0.0 <= args.base_rate <= 1.0:
        return _fail(EXIT_USAGE, f"--base-rate must lie in [0, 1], got {args.base_rate}")

    try:
        scenarios = parse_scenarios(scenarios_text)
    except ParseError as exc:
        return _fail(EXIT_PLAN, str(exc))
    plan = scenarios.get(args.scenario)
    if plan is None:
        known = ", ".join(sorted(scenarios)) or "none"
        return _fail(
            EXIT_PLAN, f"scenario {args.scenario!r} not found (defined scenarios: {known})"
        )

    try:
        topics = parse_topics(topics_text)
    except MalformedTopic as exc:
        return _fail(EXIT_TOPIC, str(exc))
    log.debug("running scenario %r over %d topic(s)", args.scenario, len(topics))

    rows: list[RunOutput | RunError] = []
    failed = False
    for topic in topics:
        try:
            rows.append(run_topic(topic, args.scenario, plan, cfg, args.base_rate))
        except PolyrepError as exc:
            failed = True
            kind = getattr(exc, "kind", type(exc).__name__)
            rows.append(RunError(topic.id, args.scenario, kind, str(exc)))

    if args.machine:
        for row in rows:
            print(machine_line(row) if isinstance(row, RunOutput) else error_line(row))
    else:
        table = render_table(rows)
        if table:
            print(table)
    if args.strict and failed:
        return EXIT_FUSION
    return EXIT_OK


def _cmd_validate(args: argparse.Namespace) -> int:
    if args.samples < MIN_SAMPLES:
        return _fail(EXIT_USAGE, f"--samples must be at least {MIN_SAMPLES}, got {args.samples}")
    seed = args.seed & 0xFFFFFFFFFFFFFFFF  # interpret as unsigned 64-bit
    reports = run_suite(seed, args.samples)
    print(f"seed={seed} samples={args.samples}")
    print(render_reports(reports))
    failures = sum(1 for r in reports if not r.passed)
    if failures:
        print(f"FAILED {failures} of {len(reports)} checks", file=sys.stderr)
        return EXIT_ORACLE
    return EXIT_OK


_COMMANDS = {
    "opinion": _cmd_opinion,
    "fuse": _cmd_fuse,
    "run": _cmd_run,
    "validate": _cmd_validate,
}


def main(argv: list[str] | None = None) -> int:
    """Entry point returning an exit code (never raising SystemExit)."""
    level = os.environ.get("POLYREP_LOG", "warning").upper()
    logging.basicConfig(level=getattr(logging, level, logging.WARNING))
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    return _COMMANDS[args.command](args)


def run() -> None:
    """Console-script wrapper."""
    sys.exit(main())
