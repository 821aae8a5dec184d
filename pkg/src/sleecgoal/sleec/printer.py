"""Canonical pretty-printer; ``parse_sleec(print_sleec(s)) == s`` for every spec."""

from __future__ import annotations

from sleecgoal.sleec.ast import (
    And,
    Atom,
    BoolLit,
    Compare,
    Condition,
    Defeater,
    Duration,
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

_OR, _AND, _NOT, _ATOM = 1, 2, 3, 4


def format_condition(cond: Condition, context: int = _OR) -> str:
    if isinstance(cond, Or):
        text, prec = f"{format_condition(cond.left, _OR)} or {format_condition(cond.right, _AND)}", _OR
    elif isinstance(cond, And):
        text, prec = f"{format_condition(cond.left, _AND)} and {format_condition(cond.right, _NOT)}", _AND
    elif isinstance(cond, Not):
        text, prec = f"not {format_condition(cond.operand, _NOT)}", _NOT
    elif isinstance(cond, Atom):
        return cond.name
    elif isinstance(cond, BoolLit):
        return "true" if cond.value else "false"
    elif isinstance(cond, Compare):
        return f"{cond.measure} {cond.op} {format_literal(cond.value)}"
    else:
        raise TypeError(f"not a condition: {cond!r}")
    return f"({text})" if prec < context else text


def format_literal(value) -> str:
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, ScaleRef):
        return value.name
    return str(value)


def format_guard(cond: Condition) -> str:
    """Condition as it appears after ``when E and``: compound forms get parentheses."""
    return format_condition(cond, _ATOM)


def format_duration(d: Duration) -> str:
    unit = d.unit[:-1] if d.magnitude == 1 else d.unit
    return f"{d.magnitude} {unit}"


def format_response(resp: Response) -> str:
    text = resp.event
    if resp.polarity is Polarity.FORBID:
        text = "not " + text
    if resp.deadline is not None:
        text += " within " + format_duration(resp.deadline)
    return text


def format_defeater(d: Defeater) -> str:
    text = f"unless ({format_condition(d.cond)})"
    if d.response is not None:
        text += " then " + format_response(d.response)
    return text


def format_rule(rule: Rule, sep: str = " ") -> str:
    head = f"{rule.id} := when {rule.trigger_event}"
    if rule.trigger_cond is not None:
        head += " and " + format_guard(rule.trigger_cond)
    parts = [f"{head} then {format_response(rule.response)}"]
    parts += [format_defeater(d) for d in rule.defeaters]
    return sep.join(parts)


def format_purpose(p: Purpose) -> str:
    text = f"{p.id} := exists {p.exists_event}"
    if p.cond is not None:
        text += " and " + format_guard(p.cond)
    if p.while_event is not None:
        text += f" while {p.while_event}"
    return text


def format_sort(sort: Sort) -> str:
    if sort.kind == "scale":
        return f"scale({', '.join(sort.values)})"
    return sort.kind


def format_measure(m: MeasureDef) -> str:
    return f"measure {m.name}: {format_sort(m.sort)}"


def print_sleec(spec: SleecSpec, header: list[str] | None = None) -> str:
    lines = [f"// {h}" if h else "//" for h in header or []]
    lines.append("def_start")
    lines += [f"  event {e.name}" for e in spec.events]
    lines += [f"  {format_measure(m)}" for m in spec.measures]
    lines.append("def_end")
    lines.append("rule_start")
    lines += [f"  {format_rule(r, chr(10) + '    ')}" for r in spec.rules]
    lines.append("rule_end")
    if spec.purposes:
        lines.append("purpose_start")
        lines += [f"  {format_purpose(p)}" for p in spec.purposes]
        lines.append("purpose_end")
    return "\n".join(lines) + "\n"
