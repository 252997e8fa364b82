"""Run records: fusing one scenario over topics, and their serializations.

A :class:`RunOutput` captures the evaluation of one scenario plan against
one topic: the fused quadruple, its probability expectation, and the
post-order evaluation trace.

Machine format, one line per topic, tab-separated fields in this order:

    topic  scenario  belief  disbelief  uncertainty  base_rate  expectation  trace

All numbers carry 6 decimal places (round half to even).  The trace field
joins one entry per plan node with ``|``; each entry is
``index:operator:operands:b,d,u,a`` where ``operands`` is a ``-`` for leaf
nodes or comma-joined child indices.  :func:`parse_machine_line` inverts
:func:`machine_line` exactly at the text level; numeric values survive the
round trip only to 6-decimal precision, and owner metadata is not carried.

Per-topic failures serialize as 5-field lines whose third field is the
marker ``ERROR`` followed by the error kind and message.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .evidence import ExtractorConfig
from .opinions import expectation
from .plans import PlanExpr, TraceEntry, evaluate_plan_traced
from .topics import Topic

__all__ = [
    "RunOutput",
    "RunError",
    "run_topic",
    "machine_line",
    "error_line",
    "parse_machine_line",
    "render_table",
]

_ERROR_MARKER = "ERROR"


def _f6(x: float) -> str:
    return format(x, ".6f")


@dataclass(frozen=True)
class RunOutput:
    """Result of evaluating one scenario against one topic.

    For computed outputs ``expectation`` equals b + a*u within 1e-12 and
    the trace holds exactly one entry per plan node, children before
    parents.  Instances rebuilt by :func:`parse_machine_line` carry the
    6-decimal values from the line instead.
    """

    topic_id: str
    scenario: str
    belief: float
    disbelief: float
    uncertainty: float
    base_rate: float
    expectation: float
    trace: tuple[TraceEntry, ...]


@dataclass(frozen=True)
class RunError:
    """A per-topic failure, kept alongside successful outputs."""

    topic_id: str
    scenario: str
    kind: str
    message: str


def run_topic(
    topic: Topic,
    scenario: str,
    plan: PlanExpr,
    cfg: ExtractorConfig | None = None,
    base_rate: float = 0.5,
) -> RunOutput:
    """Evaluate one plan against one topic into a run record."""
    final, trace = evaluate_plan_traced(plan, topic, cfg, base_rate)
    return RunOutput(
        topic.id,
        scenario,
        final.belief,
        final.disbelief,
        final.uncertainty,
        final.base_rate,
        expectation(final),
        trace,
    )


def _trace_field(trace: tuple[TraceEntry, ...]) -> str:
    entries = []
    for entry in trace:
        operands = ",".join(str(i) for i in entry.operands) or "-"
        quad = ",".join(_f6(v) for v in entry.result)
        entries.append(f"{entry.index}:{entry.operator}:{operands}:{quad}")
    return "|".join(entries)


def machine_line(out: RunOutput) -> str:
    """One tab-separated line for a successful run (see module docstring)."""
    return "\t".join(
        (
            out.topic_id,
            out.scenario,
            _f6(out.belief),
            _f6(out.disbelief),
            _f6(out.uncertainty),
            _f6(out.base_rate),
            _f6(out.expectation),
            _trace_field(out.trace),
        )
    )


def error_line(err: RunError) -> str:
    """One tab-separated line for a failed topic."""
    return "\t".join((err.topic_id, err.scenario, _ERROR_MARKER, err.kind, err.message))


def parse_machine_line(line: str) -> RunOutput:
    """Parse one machine-format line back into a :class:`RunOutput`.

    Raises ``ValueError`` for error lines and anything else that does not
    match the format.
    """
    fields = line.rstrip("\n").split("\t")
    if len(fields) >= 3 and fields[2] == _ERROR_MARKER:
        raise ValueError(f"error line for topic {fields[0]!r}, not a run output")
    if len(fields) != 8:
        raise ValueError(f"expected 8 tab-separated fields, got {len(fields)}")
    topic_id, scenario = fields[0], fields[1]
    try:
        numbers = [float(f) for f in fields[2:7]]
        trace = []
        for chunk in fields[7].split("|"):
            index_text, operator, operands_text, quad_text = chunk.split(":")
            operands = (
                () if operands_text == "-" else tuple(int(i) for i in operands_text.split(","))
            )
            quad = tuple(float(v) for v in quad_text.split(","))
            if len(quad) != 4:
                raise ValueError(f"trace entry needs 4 components, got {len(quad)}")
            trace.append(TraceEntry(int(index_text), operator, operands, quad))
    except ValueError as exc:
        raise ValueError(f"malformed run output line: {exc}") from exc
    return RunOutput(topic_id, scenario, *numbers, tuple(trace))


def render_table(rows: Sequence[RunOutput | RunError]) -> str:
    """Human-readable table with per-topic trace lines.

    Returns an empty string for an empty run.  Column widths adapt to the
    content, so output is deterministic for identical inputs.
    """
    if not rows:
        return ""
    topic_w = max([len("topic")] + [len(r.topic_id) for r in rows])
    scen_w = max([len("scenario")] + [len(r.scenario) for r in rows])
    num_headers = ("belief", "disbelief", "uncertainty", "base_rate", "expectation")
    widths = [max(len(h), 8) for h in num_headers]
    header = "  ".join(
        [f"{'topic':<{topic_w}}", f"{'scenario':<{scen_w}}"]
        + [f"{h:>{w}}" for h, w in zip(num_headers, widths)]
    )
    lines = [header]
    for row in rows:
        if isinstance(row, RunError):
            lines.append(
                f"{row.topic_id:<{topic_w}}  {row.scenario:<{scen_w}}  "
                f"{_ERROR_MARKER} {row.kind}: {row.message}"
            )
            continue
        values = (row.belief, row.disbelief, row.uncertainty, row.base_rate, row.expectation)
        lines.append(
            "  ".join(
                [f"{row.topic_id:<{topic_w}}", f"{row.scenario:<{scen_w}}"]
                + [f"{_f6(v):>{w}}" for v, w in zip(values, widths)]
            )
        )
        for entry in row.trace:
            operands = ",".join(str(i) for i in entry.operands)
            call = f"{entry.operator}({operands})" if operands else entry.operator
            quad = ",".join(_f6(v) for v in entry.result)
            lines.append(f"  [{entry.index}] {call} -> {quad}")
    return "\n".join(lines)
