"""Discrete-trace semantics for SLEEC rule sets.

A trace is a sequence of ticks; each tick carries the set of events that
occur at it and a total valuation of the measures. A rule activates at tick
``t`` when its trigger event occurs at ``t`` and its trigger condition holds
under the valuation at ``t``. Defeaters are resolved at the same tick; the
last defeater whose condition holds decides the effective response.

Obligation windows are inclusive. A deadline of ``d`` ticks activated at
``t`` gives ``[t, t + d]``. Responses without a deadline are open-ended:
their window is reported as ``[t, B - 1]`` for a trace of length ``B``, an
undischarged open-ended requirement is *pending* rather than violated, and
an open-ended prohibition lasts until the end of the trace.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum
from typing import Iterable, Mapping

from sleecgoal.sleec.ast import (
    And,
    Atom,
    BoolLit,
    Compare,
    Condition,
    Not,
    Or,
    Polarity,
    Response,
    Rule,
    ScaleRef,
    SleecSpec,
    Sort,
    Value,
)
from sleecgoal.sleec.resolve import TickScale, normalize_durations

Valuation = Mapping[str, Value]


@dataclass(frozen=True)
class Tick:
    events: frozenset[str] = frozenset()
    measures: tuple[tuple[str, Value], ...] = ()

    @classmethod
    def of(cls, events: Iterable[str] = (), valuation: Valuation | None = None) -> "Tick":
        return cls(frozenset(events), tuple(sorted((valuation or {}).items())))

    @property
    def valuation(self) -> dict[str, Value]:
        return dict(self.measures)


@dataclass(frozen=True)
class Trace:
    ticks: tuple[Tick, ...] = ()

    def __len__(self) -> int:
        return len(self.ticks)

    def __getitem__(self, i: int) -> Tick:
        return self.ticks[i]

    def prefix(self, n: int) -> "Trace":
        return Trace(self.ticks[:n])

    def extend(self, *ticks: Tick) -> "Trace":
        return Trace(self.ticks + tuple(ticks))


@dataclass(frozen=True)
class Obligation:
    rule: str
    polarity: Polarity
    event: str
    window: tuple[int, int]
    open_ended: bool = False

    @property
    def activation_tick(self) -> int:
        return self.window[0]

    @property
    def upper(self) -> float:
        """Upper end of the window, infinite when open-ended."""
        return math.inf if self.open_ended else self.window[1]

    def describe(self) -> str:
        verb = "require" if self.polarity is Polarity.REQUIRE else "forbid"
        hi = "end" if self.open_ended else str(self.window[1])
        return f"{verb} {self.event} on [{self.window[0]}, {hi}]"


@dataclass(frozen=True)
class ActivationRecord:
    rule: str
    tick: int
    matched_defeater: int | None
    obligation: Obligation | None  # None: cancelled by a defeater

    @property
    def cancelled(self) -> bool:
        return self.obligation is None


class Status(str, Enum):
    DISCHARGED = "discharged"
    RESPECTED = "respected"
    VIOLATED = "violated"
    PENDING = "pending"


@dataclass(frozen=True)
class ObligationState:
    obligation: Obligation
    status: Status
    at: int | None = None  # discharge/violation tick


@dataclass(frozen=True)
class Verdict:
    status: str  # "compliant" | "violated" | "pending"
    violated: tuple[Obligation, ...] = ()
    pending: tuple[Obligation, ...] = ()

    @property
    def compliant(self) -> bool:
        return self.status == "compliant"

    @property
    def is_violated(self) -> bool:
        return self.status == "violated"


# -- conditions ---------------------------------------------------------------

def evaluate_condition(cond: Condition | None, valuation: Valuation,
                       sorts: Mapping[str, Sort] | None = None) -> bool:
    """Evaluate ``cond``; ``sorts`` is needed only for order tests on scales."""
    if cond is None:
        return True
    if isinstance(cond, BoolLit):
        return cond.value
    if isinstance(cond, Atom):
        return valuation[cond.name] is True
    if isinstance(cond, Not):
        return not evaluate_condition(cond.operand, valuation, sorts)
    if isinstance(cond, And):
        return (evaluate_condition(cond.left, valuation, sorts)
                and evaluate_condition(cond.right, valuation, sorts))
    if isinstance(cond, Or):
        return (evaluate_condition(cond.left, valuation, sorts)
                or evaluate_condition(cond.right, valuation, sorts))
    if isinstance(cond, Compare):
        lhs = valuation[cond.measure]
        rhs = cond.value.name if isinstance(cond.value, ScaleRef) else cond.value
        if cond.op == "=":
            return lhs == rhs
        if cond.op == "<>":
            return lhs != rhs
        if isinstance(rhs, str):
            if sorts is None or cond.measure not in sorts:
                raise ValueError(f"ordering on scale {cond.measure!r} needs its declaration")
            order = sorts[cond.measure].values
            lhs, rhs = order.index(lhs), order.index(rhs)
        return _ORDER[cond.op](lhs, rhs)
    raise TypeError(f"not a condition: {cond!r}")


_ORDER = {
    "<": lambda a, b: a < b,
    "<=": lambda a, b: a <= b,
    ">": lambda a, b: a > b,
    ">=": lambda a, b: a >= b,
}


def resolve_defeaters(rule: Rule, valuation: Valuation,
                      sorts: Mapping[str, Sort] | None = None) -> tuple[int | None, Response | None]:
    matched, response = None, rule.response
    for i, d in enumerate(rule.defeaters, start=1):
        if evaluate_condition(d.cond, valuation, sorts):
            matched, response = i, d.response
    return matched, response


def effective_response(rule: Rule, valuation: Valuation,
                       sorts: Mapping[str, Sort] | None = None) -> Response | None:
    """The response in force under ``valuation``; ``None`` means cancelled."""
    return resolve_defeaters(rule, valuation, sorts)[1]


# -- traces -------------------------------------------------------------------

def activations(spec: SleecSpec, trace: Trace,
                scale: TickScale | None = None) -> list[ActivationRecord]:
    scale = scale or normalize_durations(spec)
    sorts = spec.sorts
    end = len(trace) - 1
    records = []
    for t, tick in enumerate(trace.ticks):
        valuation = tick.valuation
        for rule in spec.rules:
            if rule.trigger_event not in tick.events:
                continue
            if not evaluate_condition(rule.trigger_cond, valuation, sorts):
                continue
            matched, response = resolve_defeaters(rule, valuation, sorts)
            obligation = None
            if response is not None:
                if response.deadline is None:
                    obligation = Obligation(rule.id, response.polarity, response.event,
                                            (t, end), open_ended=True)
                else:
                    hi = t + scale.ticks(response.deadline)
                    obligation = Obligation(rule.id, response.polarity, response.event, (t, hi))
            records.append(ActivationRecord(rule.id, t, matched, obligation))
    return records


def obligation_states(spec: SleecSpec, trace: Trace, scale: TickScale | None = None
                      ) -> list[tuple[ActivationRecord, ObligationState | None]]:
    """Every activation paired with the fate of its obligation (None if cancelled)."""
    out = []
    length = len(trace)
    for rec in activations(spec, trace, scale):
        ob = rec.obligation
        if ob is None:
            out.append((rec, None))
            continue
        lo, hi = ob.window
        seen = next((t for t in range(lo, min(hi, length - 1) + 1)
                     if ob.event in trace[t].events), None)
        if ob.polarity is Polarity.REQUIRE:
            if seen is not None:
                state = ObligationState(ob, Status.DISCHARGED, seen)
            elif not ob.open_ended and hi < length:
                state = ObligationState(ob, Status.VIOLATED, hi)
            else:
                state = ObligationState(ob, Status.PENDING)
        else:
            if seen is not None:
                state = ObligationState(ob, Status.VIOLATED, seen)
            else:
                state = ObligationState(ob, Status.RESPECTED)
        out.append((rec, state))
    return out


def is_compliant(spec: SleecSpec, trace: Trace, scale: TickScale | None = None) -> Verdict:
    violated, pending = [], []
    for _, state in obligation_states(spec, trace, scale):
        if state is None:
            continue
        if state.status is Status.VIOLATED:
            violated.append(state.obligation)
        elif state.status is Status.PENDING:
            pending.append(state.obligation)
    if violated:
        return Verdict("violated", tuple(violated), tuple(pending))
    if pending:
        return Verdict("pending", (), tuple(pending))
    return Verdict("compliant")


def obligation_clash(o1: Obligation, o2: Obligation) -> bool:
    """True when every way of meeting the requirement breaks the prohibition."""
    if o1.event != o2.event or o1.polarity == o2.polarity:
        return False
    req, forb = (o1, o2) if o1.polarity is Polarity.REQUIRE else (o2, o1)
    return forb.window[0] <= req.window[0] and req.upper <= forb.upper
