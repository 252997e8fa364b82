"""A small expression language for fusion plans, with parser and evaluator.

Grammar (whitespace between tokens is insignificant):

    plan  := expr
    expr  := rterm ( '(+)' rterm )*             consensus, left-associative
    rterm := atom ( '(x)' atom )*               recommendation, binds tighter
    atom  := 'rep' DIGIT                        DIGIT in 1..5
           | 'opinion(' num ',' num ',' num ',' num ')'
           | 'consensus(' expr ',' expr ')'
           | 'recommend(' expr ',' expr ')'

``(+)`` and ``(x)`` are atomic three-character operator tokens, infix forms
of ``consensus(...)`` and ``recommend(...)``.  ``rep<i>`` evaluates to the
opinion extracted from representation i of the topic under evaluation;
``opinion(b, d, u, a)`` is a literal.  Nesting is capped at
``MAX_PLAN_DEPTH`` levels.  Parse failures raise :class:`ParseError`
carrying a 1-based byte offset and the token kinds acceptable at that
point.

Plans in the infix form obey the usual reading: ``rep2 (x) rep4 (+) rep5``
parses as ``consensus(recommend(rep2, rep4), rep5)``.

When a recommendation is evaluated inside a plan, the left operand is taken
as the trust opinion and is rebound to target the right operand's owner.
This lets plans discount one representation by another without spelling out
the trust chain; the raw :func:`polyrep.fusion.recommend` operator keeps
its strict owner check.

Scenario configuration files map names to plans, one ``name = <plan>`` per
line, with ``#`` starting a comment and blank lines ignored.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field, replace
from typing import Union

from .errors import ConstraintViolation, FusionError, ParseError
from .evidence import ExtractorConfig, representation_opinion
from .fusion import consensus as fuse_consensus
from .fusion import recommend as fuse_recommend
from .opinions import Opinion
from .topics import REPRESENTATION_COUNT, Topic

__all__ = [
    "MAX_PLAN_DEPTH",
    "PlanExpr",
    "RepRef",
    "Literal",
    "Consensus",
    "Recommend",
    "TraceEntry",
    "parse_plan",
    "pretty_print",
    "evaluate_plan",
    "evaluate_plan_traced",
    "parse_scenarios",
]

MAX_PLAN_DEPTH = 64

Span = tuple[int, int]


@dataclass(frozen=True)
class RepRef:
    """Reference to one representation of the topic under evaluation."""

    index: int
    span: Span | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Literal:
    """An inline opinion literal."""

    belief: float
    disbelief: float
    uncertainty: float
    base_rate: float
    span: Span | None = field(default=None, compare=False)

    def __post_init__(self) -> None:
        # Validate through the opinion constructor, but store raw values so
        # pretty-printing reproduces the source exactly.
        Opinion("", "", self.belief, self.disbelief, self.uncertainty, self.base_rate)


@dataclass(frozen=True)
class Consensus:
    left: "PlanExpr"
    right: "PlanExpr"
    span: Span | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Recommend:
    trust: "PlanExpr"
    rec: "PlanExpr"
    span: Span | None = field(default=None, compare=False)


PlanExpr = Union[RepRef, Literal, Consensus, Recommend]


@dataclass(frozen=True)
class TraceEntry:
    """One evaluated plan node, in post-order.

    ``operands`` lists the trace indices of the node's children and
    ``result`` the (b, d, u, a) quadruple the node produced.
    """

    index: int
    operator: str
    operands: tuple[int, ...]
    result: tuple[float, float, float, float]


# --------------------------------------------------------------------------
# Lexer

_NUMBER_RE = re.compile(r"\d+(?:\.\d*)?(?:[eE][+-]?\d+)?|\.\d+(?:[eE][+-]?\d+)?")
_IDENT_RE = re.compile(r"[A-Za-z]+\d*")

_ATOM_EXPECTED = ("rep1..rep5", "'opinion('", "'consensus('", "'recommend('")


@dataclass(frozen=True)
class _Token:
    kind: str
    text: str
    offset: int  # 1-based byte offset


def _byte_offsets(source: str) -> list[int]:
    """1-based byte offset of every character position (and one past the end)."""
    offsets = [1]
    for ch in source:
        offsets.append(offsets[-1] + len(ch.encode("utf-8")))
    return offsets


def _lex(source: str) -> list[_Token]:
    offsets = _byte_offsets(source)
    tokens: list[_Token] = []
    i = 0
    n = len(source)
    while i < n:
        ch = source[i]
        if ch.isspace():
            i += 1
            continue
        offset = offsets[i]
        if ch == "(":
            tail = source[i : i + 3]
            if tail == "(+)":
                tokens.append(_Token("oplus", "(+)", offset))
                i += 3
                continue
            if tail == "(x)":
                tokens.append(_Token("otimes", "(x)", offset))
                i += 3
                continue
            tokens.append(_Token("lparen", "(", offset))
            i += 1
            continue
        if ch == ")":
            tokens.append(_Token("rparen", ")", offset))
            i += 1
            continue
        if ch == ",":
            tokens.append(_Token("comma", ",", offset))
            i += 1
            continue
        if ch.isdigit() or ch == ".":
            match = _NUMBER_RE.match(source, i)
            if match:
                tokens.append(_Token("number", match.group(), offset))
                i = match.end()
                continue
            raise ParseError(f"malformed number {ch!r}", offset, ("number",))
        if ch.isalpha():
            match = _IDENT_RE.match(source, i)
            if match is None:  # alphabetic outside A-Za-z, e.g. accented letters
                raise ParseError(f"unexpected character {ch!r}", offset, _ATOM_EXPECTED)
            word = match.group()
            if word in ("consensus", "recommend", "opinion"):
                tokens.append(_Token(word, word, offset))
            elif word.startswith("rep"):
                tokens.append(_Token("rep", word, offset))
            else:
                raise ParseError(f"unknown name {word!r}", offset, _ATOM_EXPECTED)
            i = match.end()
            continue
        raise ParseError(f"unexpected character {ch!r}", offset, _ATOM_EXPECTED)
    tokens.append(_Token("eof", "", offsets[n]))
    return tokens


# --------------------------------------------------------------------------
# Parser

_TOKEN_LABELS = {
    "lparen": "'('",
    "rparen": "')'",
    "comma": "','",
    "number": "number",
    "eof": "end of input",
}


class _Parser:
    def __init__(self, tokens: list[_Token]):
        self.tokens = tokens
        self.pos = 0

    def peek(self) -> _Token:
        return self.tokens[self.pos]

    def advance(self) -> _Token:
        token = self.tokens[self.pos]
        self.pos += 1
        return token

    def expect(self, kind: str) -> _Token:
        token = self.peek()
        if token.kind != kind:
            label = _TOKEN_LABELS.get(kind, f"'{kind}'")
            found = token.text or "end of input"
            raise ParseError(f"unexpected {found!r}", token.offset, (label,))
        return self.advance()

    def parse_expr(self, depth: int) -> PlanExpr:
        left = self.parse_rterm(depth)
        while self.peek().kind == "oplus":
            self.advance()
            right = self.parse_rterm(depth)
            left = Consensus(left, right, span=_merge_spans(left.span, right.span))
        return left

    def parse_rterm(self, depth: int) -> PlanExpr:
        left = self.parse_atom(depth)
        while self.peek().kind == "otimes":
            self.advance()
            right = self.parse_atom(depth)
            left = Recommend(left, right, span=_merge_spans(left.span, right.span))
        return left

    def parse_atom(self, depth: int) -> PlanExpr:
        if depth >= MAX_PLAN_DEPTH:
            raise ParseError(
                f"plan nesting exceeds {MAX_PLAN_DEPTH} levels", self.peek().offset
            )
        token = self.peek()
        if token.kind == "rep":
            self.advance()
            suffix = token.text[3:]
            if suffix.isdigit() and 1 <= int(suffix) <= REPRESENTATION_COUNT:
                end = token.offset + len(token.text)
                return RepRef(int(suffix), span=(token.offset, end))
            raise ParseError(
                f"unknown representation {token.text!r}",
                token.offset,
                (f"rep1..rep{REPRESENTATION_COUNT}",),
            )
        if token.kind == "opinion":
            self.advance()
            self.expect("lparen")
            values = []
            for position in range(4):
                if position:
                    self.expect("comma")
                number = self.expect("number")
                values.append(float(number.text))
            closing = self.expect("rparen")
            span = (token.offset, closing.offset + 1)
            try:
                return Literal(*values, span=span)
            except ConstraintViolation as exc:
                raise ParseError(f"invalid opinion literal: {exc}", token.offset) from exc
        if token.kind in ("consensus", "recommend"):
            self.advance()
            self.expect("lparen")
            left = self.parse_expr(depth + 1)
            self.expect("comma")
            right = self.parse_expr(depth + 1)
            closing = self.expect("rparen")
            span = (token.offset, closing.offset + 1)
            if token.kind == "consensus":
                return Consensus(left, right, span=span)
            return Recommend(left, right, span=span)
        found = token.text or "end of input"
        raise ParseError(f"unexpected {found!r}", token.offset, _ATOM_EXPECTED)


def _merge_spans(left: Span | None, right: Span | None) -> Span | None:
    if left is None or right is None:
        return None
    return (left[0], right[1])


def _ast_depth(expr: PlanExpr) -> int:
    """Depth of a plan tree, computed iteratively."""
    deepest = 1
    stack: list[tuple[PlanExpr, int]] = [(expr, 1)]
    while stack:
        node, level = stack.pop()
        deepest = max(deepest, level)
        if isinstance(node, Consensus):
            stack.append((node.left, level + 1))
            stack.append((node.right, level + 1))
        elif isinstance(node, Recommend):
            stack.append((node.trust, level + 1))
            stack.append((node.rec, level + 1))
    return deepest


def parse_plan(source: str) -> PlanExpr:
    """Parse plan text into an expression tree.

    Raises :class:`ParseError` with a 1-based byte offset on any input that
    does not match the grammar, including trailing content and plans nested
    deeper than ``MAX_PLAN_DEPTH``.
    """
    parser = _Parser(_lex(source))
    expr = parser.parse_expr(depth=1)
    parser.expect("eof")
    if _ast_depth(expr) > MAX_PLAN_DEPTH:
        raise ParseError(f"plan nesting exceeds {MAX_PLAN_DEPTH} levels", 1)
    return expr


def pretty_print(expr: PlanExpr) -> str:
    """Render a plan in canonical function syntax.

    ``parse_plan(pretty_print(e))`` reproduces ``e`` (spans aside); literal
    components are printed with ``repr`` so their values survive the round
    trip bit for bit.
    """
    if isinstance(expr, RepRef):
        return f"rep{expr.index}"
    if isinstance(expr, Literal):
        return (
            f"opinion({expr.belief!r}, {expr.disbelief!r}, "
            f"{expr.uncertainty!r}, {expr.base_rate!r})"
        )
    if isinstance(expr, Consensus):
        return f"consensus({pretty_print(expr.left)}, {pretty_print(expr.right)})"
    if isinstance(expr, Recommend):
        return f"recommend({pretty_print(expr.trust)}, {pretty_print(expr.rec)})"
    raise TypeError(f"not a plan expression: {expr!r}")


# --------------------------------------------------------------------------
# Evaluation

def _annotate(err: FusionError, span: Span | None) -> None:
    """Attach the failing subtree's source span to a fusion error, once."""
    if span is not None and getattr(err, "plan_span", None) is None:
        err.plan_span = span  # type: ignore[attr-defined]
        if err.args:
            err.args = (f"{err.args[0]} [plan offset {span[0]}..{span[1]}]",) + err.args[1:]


def evaluate_plan_traced(
    plan: PlanExpr,
    topic: Topic,
    cfg: ExtractorConfig | None = None,
    base_rate: float = 0.5,
) -> tuple[Opinion, tuple[TraceEntry, ...]]:
    """Evaluate a plan against one topic, recording every node's result.

    Returns the final opinion together with a post-order trace (children
    precede parents, one entry per plan node).  Evaluation is deterministic
    and pure.  Fusion errors propagate annotated with the failing
    subtree's source span, when the plan came from :func:`parse_plan`.
    """
    trace: list[TraceEntry] = []

    def emit(operator: str, operands: tuple[int, ...], result: Opinion) -> int:
        index = len(trace)
        trace.append(TraceEntry(index, operator, operands, result.components))
        return index

    def visit(node: PlanExpr) -> tuple[int, Opinion]:
        if isinstance(node, RepRef):
            result = representation_opinion(topic, node.index, cfg, base_rate)
            return emit(f"rep{node.index}", (), result), result
        if isinstance(node, Literal):
            result = Opinion(
                "literal", topic.id, node.belief, node.disbelief,
                node.uncertainty, node.base_rate,
            )
            return emit("literal", (), result), result
        if isinstance(node, Consensus):
            left_index, left = visit(node.left)
            right_index, right = visit(node.right)
            try:
                result = fuse_consensus(left, right)
            except FusionError as err:
                _annotate(err, node.span)
                raise
            return emit("consensus", (left_index, right_index), result), result
        if isinstance(node, Recommend):
            trust_index, trust = visit(node.trust)
            rec_index, rec = visit(node.rec)
            try:
                result = fuse_recommend(replace(trust, proposition=rec.owner), rec)
            except FusionError as err:
                _annotate(err, node.span)
                raise
            return emit("recommend", (trust_index, rec_index), result), result
        raise TypeError(f"not a plan expression: {node!r}")

    _, final = visit(plan)
    return final, tuple(trace)


def evaluate_plan(
    plan: PlanExpr,
    topic: Topic,
    cfg: ExtractorConfig | None = None,
    base_rate: float = 0.5,
) -> Opinion:
    """Evaluate a plan against one topic (see :func:`evaluate_plan_traced`)."""
    final, _ = evaluate_plan_traced(plan, topic, cfg, base_rate)
    return final


# --------------------------------------------------------------------------
# Scenario configuration files

_SCENARIO_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_.\-]*$")


def parse_scenarios(text: str) -> dict[str, PlanExpr]:
    """Parse a scenario configuration into an ordered name -> plan mapping.

    Offsets in raised :class:`ParseError` values are byte offsets into the
    whole configuration text, so editors can jump to the failure.
    """
    scenarios: dict[str, PlanExpr] = {}
    consumed = 0  # bytes of all previous lines, including newlines
    for line_no, line in enumerate(text.splitlines(), start=1):
        line_bytes = len(line.encode("utf-8"))
        stripped = line.split("#", 1)[0]
        if stripped.strip():
            if "=" not in stripped:
                raise ParseError(
                    f"scenario line {line_no} must look like 'name = <plan>'",
                    consumed + 1,
                )
            name_part, plan_part = stripped.split("=", 1)
            name = name_part.strip()
            if not _SCENARIO_NAME_RE.match(name):
                raise ParseError(
                    f"invalid scenario name {name!r} on line {line_no}", consumed + 1
                )
            if name in scenarios:
                raise ParseError(
                    f"duplicate scenario {name!r} on line {line_no}", consumed + 1
                )
            plan_base = consumed + len(
                line[: len(name_part) + 1].encode("utf-8")
            )
            try:
                scenarios[name] = parse_plan(plan_part)
            except ParseError as exc:
                raise ParseError(
                    f"scenario {name!r}: {exc.args[0]}",
                    plan_base + exc.offset,
                    exc.expected,
                ) from exc
        consumed += line_bytes + 1
    return scenarios
