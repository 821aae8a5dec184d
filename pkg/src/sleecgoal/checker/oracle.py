"""Brute-force reference verdicts for small instances.

Everything here goes straight through the trace semantics: no slicing, no
state abstraction, no pruning of event sets or valuations. It exists to
certify the search on instances small enough to enumerate.
"""

from __future__ import annotations

from collections.abc import Iterator
from dataclasses import dataclass, field
from itertools import combinations, product

from sleecgoal.checker.config import CheckConfig, require_bound
from sleecgoal.checker.domains import abstract_measure_domains
from sleecgoal.errors import InstanceTooLarge
from sleecgoal.semantics import (
    Status,
    Tick,
    Trace,
    Verdict,
    evaluate_condition,
    is_compliant,
    obligation_clash,
    obligation_states,
)
from sleecgoal.sleec.ast import Polarity, SleecSpec
from sleecgoal.sleec.resolve import TickScale

MAX_EVENTS = 6
MAX_BOUND = 5
MAX_DOMAIN = 3


def tick_alphabet(spec: SleecSpec, cfg: CheckConfig) -> list[Tick]:
    """Every tick over the spec's events and abstract measure domains."""
    domains = abstract_measure_domains(spec, cfg.numeric_representatives)
    names = sorted(spec.event_names)
    if len(names) > MAX_EVENTS:
        raise InstanceTooLarge(f"{len(names)} events; the oracle handles at most {MAX_EVENTS}")
    if cfg.bound_ticks > MAX_BOUND:
        raise InstanceTooLarge(f"bound {cfg.bound_ticks}; the oracle handles at most {MAX_BOUND}")
    wide = [m for m, d in domains.items() if len(d) > MAX_DOMAIN]
    if wide:
        raise InstanceTooLarge(f"measure domains larger than {MAX_DOMAIN}: {', '.join(wide)}")
    event_sets = [c for n in range(min(cfg.max_events_per_tick, len(names)) + 1)
                  for c in combinations(names, n)]
    measures = list(domains)
    valuations = [dict(zip(measures, combo))
                  for combo in product(*(domains[m] for m in measures))]
    return [Tick.of(es, v) for es in event_sets for v in valuations]


def enumerate_all_traces(spec: SleecSpec, cfg: CheckConfig) -> Iterator[tuple[Trace, Verdict]]:
    """Every trace of length ``cfg.bound_ticks`` with its compliance verdict."""
    scale = require_bound(spec, cfg)
    alphabet = tick_alphabet(spec, cfg)
    for ticks in product(alphabet, repeat=cfg.bound_ticks):
        trace = Trace(ticks)
        yield trace, is_compliant(spec, trace, scale)


def _prefixes(alphabet: list[Tick], bound: int) -> Iterator[tuple[Tick, ...]]:
    stack: list[tuple[Tick, ...]] = [()]
    while stack:
        prefix = stack.pop()
        for tick in reversed(alphabet):
            longer = prefix + (tick,)
            if len(longer) < bound:
                stack.append(longer)
        for tick in alphabet:
            yield prefix + (tick,)


@dataclass
class OracleVerdicts:
    triggerable: dict[str, bool] = field(default_factory=dict)
    situational: dict[str, bool] = field(default_factory=dict)
    purposes: dict[str, bool] = field(default_factory=dict)
    dead_end: dict[str, bool] = field(default_factory=dict)


def oracle_verdicts(spec: SleecSpec, cfg: CheckConfig, dead_ends: bool = False) -> OracleVerdicts:
    """Per-rule and per-purpose verdicts over every trace of length at most the bound.

    ``triggerable[r]``: some compliant trace gives ``r`` a non-cancelled activation.
    ``situational[r]``: some non-violated trace holds a clashing pair with an
    obligation of ``r``. ``purposes[p]``: some compliant trace exhibits ``p``.
    ``dead_end[r]`` (only with ``dead_ends``): some non-violated prefix ending
    in an activation of ``r``, short enough for a full deadline window, has no
    compliant extension within the bound.
    """
    scale = require_bound(spec, cfg)
    alphabet = tick_alphabet(spec, cfg)
    bound = cfg.bound_ticks
    out = OracleVerdicts(
        {r.id: False for r in spec.rules},
        {r.id: False for r in spec.rules},
        {p.id: False for p in spec.purposes},
        {r.id: False for r in spec.rules} if dead_ends else {},
    )
    horizon = 1 + scale.max_deadline
    for ticks in _prefixes(alphabet, bound):
        trace = Trace(ticks)
        states = obligation_states(spec, trace, scale)
        statuses = [s.status for _, s in states if s is not None]
        violated = Status.VIOLATED in statuses
        compliant = not violated and Status.PENDING not in statuses
        if compliant:
            for rec, s in states:
                if s is not None:
                    out.triggerable[rec.rule] = True
            for p in spec.purposes:
                if not out.purposes[p.id] and _exhibits(spec, trace, p):
                    out.purposes[p.id] = True
        if not violated:
            obligations = [s.obligation for _, s in states if s is not None]
            for a in obligations:
                if a.polarity is not Polarity.REQUIRE:
                    continue
                for b in obligations:
                    if obligation_clash(a, b):
                        out.situational[a.rule] = True
                        out.situational[b.rule] = True
            if dead_ends and len(trace) <= bound - horizon:
                last = len(trace) - 1
                for rec, s in states:
                    if (s is not None and rec.tick == last and not out.dead_end[rec.rule]
                            and not _has_compliant_extension(spec, ticks, alphabet, bound, scale)):
                        out.dead_end[rec.rule] = True
        if not dead_ends and _settled(out):
            break
    return out


def _settled(out: OracleVerdicts) -> bool:
    return (all(out.triggerable.values()) and all(out.situational.values())
            and all(out.purposes.values()))


def _exhibits(spec: SleecSpec, trace: Trace, purpose) -> bool:
    started = purpose.while_event is None
    for tick in trace.ticks:
        if not started and purpose.while_event in tick.events:
            started = True
        if (started and purpose.exists_event in tick.events
                and evaluate_condition(purpose.cond, tick.valuation, spec.sorts)):
            return True
    return False


def _has_compliant_extension(spec: SleecSpec, ticks: tuple[Tick, ...], alphabet: list[Tick],
                             bound: int, scale: TickScale) -> bool:
    if is_compliant(spec, Trace(ticks), scale).compliant:
        return True
    for extra in range(1, bound - len(ticks) + 1):
        for tail in product(alphabet, repeat=extra):
            if is_compliant(spec, Trace(ticks + tail), scale).compliant:
                return True
    return False
