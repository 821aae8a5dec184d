"""Cone-of-influence reduction over shared events."""

from __future__ import annotations

from collections.abc import Iterable

from sleecgoal.sleec.ast import Rule, SleecSpec, measures_in
from sleecgoal.checker.domains import conditions_of


def rule_events(rule: Rule) -> set[str]:
    return {rule.trigger_event} | {r.event for r in rule.responses()}


def slice_relevant_rules(spec: SleecSpec, focus: Iterable[str]) -> SleecSpec:
    """Keep the rules connected to ``focus`` through shared events.

    ``focus`` may name rules or purposes; a purpose contributes its events.
    Events and measures not mentioned by what is kept are dropped.
    """
    focus = set(focus)
    unknown = focus - {r.id for r in spec.rules} - {p.id for p in spec.purposes}
    if unknown:
        raise KeyError(f"unknown rule or purpose ids: {sorted(unknown)}")
    purposes = tuple(p for p in spec.purposes if p.id in focus)
    events: set[str] = set()
    for p in purposes:
        events.add(p.exists_event)
        if p.while_event is not None:
            events.add(p.while_event)
    kept = {r.id for r in spec.rules if r.id in focus}
    for r in spec.rules:
        if r.id in kept:
            events |= rule_events(r)
    changed = True
    while changed:
        changed = False
        for r in spec.rules:
            if r.id not in kept and rule_events(r) & events:
                kept.add(r.id)
                events |= rule_events(r)
                changed = True
    rules = tuple(r for r in spec.rules if r.id in kept)
    reduced = SleecSpec((), (), rules, purposes)
    used_measures = set().union(*(measures_in(c) for c in conditions_of(reduced)))
    return SleecSpec(
        tuple(e for e in spec.events if e.name in events),
        tuple(m for m in spec.measures if m.name in used_measures),
        rules,
        purposes,
    )
