"""Recursive-descent parser for SLEEC documents.

A document is three delimited blocks, the last optional::

    def_start ... def_end
    rule_start ... rule_end
    purpose_start ... purpose_end
"""

from __future__ import annotations

from sleecgoal.errors import ParseError
from sleecgoal.lexer import INT, TokenStream, tokenize
from sleecgoal.sleec.ast import (
    TRUE,
    And,
    Atom,
    BoolLit,
    Compare,
    Condition,
    Defeater,
    Duration,
    EventDef,
    MeasureDef,
    Not,
    Or,
    Polarity,
    Purpose,
    Response,
    Rule,
    ScaleRef,
    SleecSpec,
    Sort,
)

RESERVED = frozenset({
    "when", "then", "unless", "within", "not", "and", "or", "exists", "while",
    "event", "measure", "true", "false",
    "def_start", "def_end", "rule_start", "rule_end", "purpose_start", "purpose_end",
})

COMPARISON_OPS = ("=", "<>", "<", "<=", ">", ">=")

UNITS = {
    "second": "seconds", "seconds": "seconds",
    "minute": "minutes", "minutes": "minutes",
    "hour": "hours", "hours": "hours",
    "day": "days", "days": "days",
}


def parse_sleec(source: str) -> SleecSpec:
    ts = TokenStream(tokenize(source), RESERVED)
    return _DocumentParser(ts).document()


# -- conditions (shared with the goal-model parser) ---------------------------

def parse_condition(ts: TokenStream) -> Condition:
    left = _and_expr(ts)
    while ts.accept("or"):
        left = Or(left, _and_expr(ts))
    return left


def _and_expr(ts: TokenStream) -> Condition:
    left = _unary(ts)
    while ts.at("and") or ts.at("&"):
        ts.advance()
        left = And(left, _unary(ts))
    return left


def _unary(ts: TokenStream) -> Condition:
    if ts.accept("not"):
        return Not(_unary(ts))
    return _primary(ts)


def _primary(ts: TokenStream) -> Condition:
    for open_, close in (("(", ")"), ("{", "}")):
        if ts.accept(open_):
            inner = parse_condition(ts)
            ts.expect(close)
            return inner
    if ts.accept("true"):
        return BoolLit(True)
    if ts.accept("false"):
        return BoolLit(False)
    tok = ts.expect_ident()
    loc = (tok.line, tok.col)
    for op in COMPARISON_OPS:
        if ts.at(op):
            break
    else:
        return Atom(tok.text, loc)
    op = ts.advance().text
    value = _literal(ts)
    if op == "=" and value is True:
        return Atom(tok.text, loc)
    return Compare(tok.text, op, value, loc)


def _literal(ts: TokenStream):
    if ts.accept("true"):
        return True
    if ts.accept("false"):
        return False
    if ts.at_kind(INT):
        return int(ts.advance().text)
    return ScaleRef(ts.expect_ident().text)


def parse_duration(ts: TokenStream) -> Duration:
    tok = ts.expect_kind(INT)
    magnitude = int(tok.text)
    if magnitude < 1:
        raise ParseError("deadline magnitude must be a positive integer", tok.line, tok.col)
    unit_tok = ts.current
    unit = UNITS.get(unit_tok.text)
    if unit is None:
        raise ParseError(
            f"unexpected {unit_tok}; expected a time unit",
            unit_tok.line, unit_tok.col, frozenset(UNITS),
        )
    ts.advance()
    return Duration(magnitude, unit)


def check_event_case(name: str, line: int, col: int) -> None:
    if not name[0].isupper():
        raise ParseError(f"event name {name!r} must begin with an uppercase letter", line, col)


def check_measure_case(name: str, line: int, col: int) -> None:
    if not name[0].islower():
        raise ParseError(f"measure name {name!r} must begin with a lowercase letter", line, col)


def parse_sort(ts: TokenStream) -> Sort:
    tok = ts.current
    if ts.accept("boolean"):
        return Sort.boolean()
    if ts.accept("numeric"):
        return Sort.numeric()
    if ts.accept("scale"):
        ts.expect("(")
        values = [ts.expect_ident().text]
        while ts.accept(","):
            values.append(ts.expect_ident().text)
        ts.expect(")")
        if len(values) < 2:
            raise ParseError("a scale needs at least two values", tok.line, tok.col)
        return Sort.scale(*values)
    raise ts.error()


def parse_definition(ts: TokenStream) -> EventDef | MeasureDef:
    if ts.accept("event"):
        tok = ts.expect_ident()
        check_event_case(tok.text, tok.line, tok.col)
        return EventDef(tok.text, (tok.line, tok.col))
    ts.expect("measure")
    tok = ts.expect_ident()
    check_measure_case(tok.text, tok.line, tok.col)
    ts.expect(":")
    return MeasureDef(tok.text, parse_sort(ts), (tok.line, tok.col))


class _DocumentParser:
    def __init__(self, ts: TokenStream):
        self.ts = ts

    def document(self) -> SleecSpec:
        ts = self.ts
        events: list[EventDef] = []
        measures: list[MeasureDef] = []
        ts.expect("def_start")
        while not ts.at("def_end"):
            d = parse_definition(ts)
            (events if isinstance(d, EventDef) else measures).append(d)
        ts.advance()

        rules = []
        ts.expect("rule_start")
        while not ts.accept("rule_end"):
            rules.append(self.rule())

        purposes = []
        if ts.accept("purpose_start"):
            while not ts.accept("purpose_end"):
                purposes.append(self.purpose())
        if not ts.at_kind("EOF"):
            raise ts.error()
        return SleecSpec(tuple(events), tuple(measures), tuple(rules), tuple(purposes))

    def _event_ref(self) -> str:
        return self.ts.expect_ident().text

    def rule(self) -> Rule:
        ts = self.ts
        name = ts.expect_ident()
        ts.expect(":=")
        ts.expect("when")
        trigger = self._event_ref()
        cond = parse_condition(ts) if ts.accept("and") else None
        ts.expect("then")
        response = self.response()
        defeaters = []
        while ts.accept("unless"):
            dcond = parse_condition(ts)
            dresp = self.response() if ts.accept("then") else None
            defeaters.append(Defeater(dcond, dresp))
        if cond == TRUE:
            cond = None
        return Rule(name.text, trigger, response, cond, tuple(defeaters), (name.line, name.col))

    def response(self) -> Response:
        ts = self.ts
        polarity = Polarity.FORBID if ts.accept("not") else Polarity.REQUIRE
        tok = ts.expect_ident()
        deadline = parse_duration(ts) if ts.accept("within") else None
        return Response(tok.text, polarity, deadline, (tok.line, tok.col))

    def purpose(self) -> Purpose:
        ts = self.ts
        name = ts.expect_ident()
        ts.expect(":=")
        ts.expect("exists")
        event = self._event_ref()
        cond = parse_condition(ts) if ts.accept("and") else None
        while_event = self._event_ref() if ts.accept("while") else None
        if cond == TRUE:
            cond = None
        return Purpose(name.text, event, cond, while_event, (name.line, name.col))

