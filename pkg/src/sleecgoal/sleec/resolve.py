"""Name resolution, sort checking and duration normalization."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from sleecgoal.sleec.ast import (
    And,
    Atom,
    BoolLit,
    Compare,
    Condition,
    Duration,
    Not,
    Or,
    Response,
    ScaleRef,
    SleecSpec,
    Sort,
)

UNDECLARED = "UndeclaredIdentifier"
SORT_MISMATCH = "SortMismatch"
DUPLICATE = "DuplicateDefinition"

ORDER_OPS = frozenset({"<", "<=", ">", ">="})


@dataclass(frozen=True)
class SemanticError:
    kind: str
    identifier: str
    context: str  # rule/purpose id, or "definitions"
    message: str
    loc: tuple[int, int] | None = field(default=None, compare=False)

    def __str__(self) -> str:
        return f"{self.kind}: {self.message}"


def check_names_and_types(spec: SleecSpec) -> list[SemanticError]:
    errors: list[SemanticError] = []
    events: set[str] = set()
    sorts: dict[str, Sort] = {}

    for e in spec.events:
        if e.name in events:
            errors.append(SemanticError(DUPLICATE, e.name, "definitions",
                                        f"event {e.name!r} is declared more than once", e.loc))
        events.add(e.name)
    for m in spec.measures:
        if m.name in sorts or m.name in events:
            errors.append(SemanticError(DUPLICATE, m.name, "definitions",
                                        f"{m.name!r} is already declared", m.loc))
        sorts.setdefault(m.name, m.sort)
        if m.sort.kind == "scale" and len(set(m.sort.values)) != len(m.sort.values):
            errors.append(SemanticError(DUPLICATE, m.name, "definitions",
                                        f"scale {m.name!r} repeats a value", m.loc))

    seen_ids: set[str] = set()
    for item in (*spec.rules, *spec.purposes):
        if item.id in seen_ids:
            errors.append(SemanticError(DUPLICATE, item.id, item.id,
                                        f"rule or purpose id {item.id!r} is used more than once",
                                        item.loc))
        seen_ids.add(item.id)

    def event_ref(name: str, ctx: str, loc) -> None:
        if name not in events:
            what = "a measure, not an event" if name in sorts else "not a declared event"
            errors.append(SemanticError(UNDECLARED, name, ctx, f"{ctx}: {name!r} is {what}", loc))

    def response_ref(resp: Response, ctx: str, fallback) -> None:
        event_ref(resp.event, ctx, resp.loc or fallback)

    for rule in spec.rules:
        event_ref(rule.trigger_event, rule.id, rule.loc)
        errors += condition_errors(rule.trigger_cond, sorts, rule.id, rule.loc)
        response_ref(rule.response, rule.id, rule.loc)
        for d in rule.defeaters:
            errors += condition_errors(d.cond, sorts, rule.id, rule.loc)
            if d.response is not None:
                response_ref(d.response, rule.id, rule.loc)
    for p in spec.purposes:
        event_ref(p.exists_event, p.id, p.loc)
        if p.while_event is not None:
            event_ref(p.while_event, p.id, p.loc)
        errors += condition_errors(p.cond, sorts, p.id, p.loc)
    return errors


def condition_errors(cond: Condition | None, sorts: dict[str, Sort], ctx: str,
                     fallback_loc=None) -> list[SemanticError]:
    if cond is None:
        return []
    out: list[SemanticError] = []

    def visit(c: Condition) -> None:
        if isinstance(c, (And, Or)):
            visit(c.left)
            visit(c.right)
        elif isinstance(c, Not):
            visit(c.operand)
        elif isinstance(c, Atom):
            loc = c.loc or fallback_loc
            sort = sorts.get(c.name)
            if sort is None:
                out.append(SemanticError(UNDECLARED, c.name, ctx,
                                         f"{ctx}: measure {c.name!r} is not declared", loc))
            elif sort.kind != "boolean":
                out.append(SemanticError(SORT_MISMATCH, c.name, ctx,
                                         f"{ctx}: {sort.kind} measure {c.name!r} used as a boolean",
                                         loc))
        elif isinstance(c, Compare):
            loc = c.loc or fallback_loc
            sort = sorts.get(c.measure)
            if sort is None:
                out.append(SemanticError(UNDECLARED, c.measure, ctx,
                                         f"{ctx}: measure {c.measure!r} is not declared", loc))
                return
            problem = _literal_problem(sort, c.op, c.value)
            if problem:
                out.append(SemanticError(SORT_MISMATCH, c.measure, ctx, f"{ctx}: {problem}", loc))
        elif not isinstance(c, BoolLit):
            raise TypeError(f"not a condition: {c!r}")

    visit(cond)
    return out


def _literal_problem(sort: Sort, op: str, value) -> str | None:
    if sort.kind == "boolean":
        if not isinstance(value, bool):
            return f"boolean measure compared with {_describe(value)}"
        if op in ORDER_OPS:
            return f"ordering operator {op!r} applied to a boolean measure"
    elif sort.kind == "numeric":
        if isinstance(value, bool) or not isinstance(value, int):
            return f"numeric measure compared with {_describe(value)}"
    else:
        if not isinstance(value, ScaleRef):
            return f"scale measure compared with {_describe(value)}"
        if value.name not in sort.values:
            return f"{value.name!r} is not a value of scale({', '.join(sort.values)})"
    return None


def _describe(value) -> str:
    if isinstance(value, bool):
        return "a boolean literal"
    if isinstance(value, int):
        return f"numeric literal {value}"
    return f"identifier {value.name!r}"


# -- durations ----------------------------------------------------------------

@dataclass(frozen=True)
class TickScale:
    """Discretization of all deadlines onto a common tick.

    ``deadlines`` maps ``(rule_id, slot)`` to a tick count, where slot 0 is
    the base response and slot ``i`` the response of defeater ``i``.
    """

    tick_seconds: int = 1
    deadlines: dict[tuple[str, int], int] = field(default_factory=dict)

    def ticks(self, duration: Duration) -> int:
        return duration.seconds // self.tick_seconds

    @property
    def max_deadline(self) -> int:
        return max(self.deadlines.values(), default=0)


def deadline_slots(spec: SleecSpec):
    for rule in spec.rules:
        if rule.response.deadline is not None:
            yield (rule.id, 0), rule.response.deadline
        for i, d in enumerate(rule.defeaters, start=1):
            if d.response is not None and d.response.deadline is not None:
                yield (rule.id, i), d.response.deadline


def normalize_durations(spec: SleecSpec) -> TickScale:
    slots = list(deadline_slots(spec))
    if not slots:
        return TickScale(1, {})
    tick = math.gcd(*(d.seconds for _, d in slots))
    return TickScale(tick, {key: d.seconds // tick for key, d in slots})


def minimum_bound(spec: SleecSpec, scale: TickScale | None = None) -> int:
    """Smallest bound able to hold one full deadline window."""
    scale = scale or normalize_durations(spec)
    return 1 + scale.max_deadline if scale.deadlines else 1
