"""Bounded explicit-state search for witnesses and conflicts.

A trace prefix is abstracted by its open obligations. Each requirement and
prohibition is kept as ``(event, remaining)`` where ``remaining`` counts the
ticks after the next one during which it stays active (``inf`` when it has
no deadline). Two requirements on the same event are discharged together,
so only the tighter one is kept; overlapping prohibitions on one event
merge into the longest. Levels are explored breadth first with a global
visited set, which makes every returned witness a shortest one.

The event sets tried at a tick are drawn from the events that can matter:
those discharging an open requirement, the triggers the property needs, and,
transitively, the required responses of rules those events trigger. Any
witness can be thinned to one whose ticks only use such events, because
dropping an occurrence that discharges nothing only removes obligations.
Valuations are grouped by the activations they produce and one
representative is tried per group.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, product

from sleecgoal.checker.config import CheckConfig, require_bound
from sleecgoal.checker.diagnosis import PURPOSE_UNSAT, SITUATIONAL, VACUOUS, Diagnosis
from sleecgoal.checker.domains import abstract_measure_domains, default_value
from sleecgoal.checker.slicing import slice_relevant_rules
from sleecgoal.semantics import (
    Status,
    Tick,
    Trace,
    evaluate_condition,
    obligation_clash,
    obligation_states,
    resolve_defeaters,
)
from sleecgoal.sleec.ast import Condition, Polarity, SleecSpec, measures_in
from sleecgoal.sleec.resolve import TickScale

INF = math.inf


@dataclass(frozen=True)
class NewObligation:
    rule: str
    polarity: Polarity
    event: str
    ticks: float


@dataclass(frozen=True)
class Outcome:
    valuation: tuple
    obligations: tuple[NewObligation, ...]
    activated: frozenset[str]
    cond: bool


@dataclass(frozen=True)
class Step:
    reqs: frozenset
    forbs: frozenset
    compliant: bool


class Model:
    """Per-spec tables for the search: triggers, domains, and caches."""

    def __init__(self, spec: SleecSpec, cfg: CheckConfig, scale: TickScale):
        self.spec = spec
        self.scale = scale
        self.k = cfg.max_events_per_tick
        self.sorts = spec.sorts
        self.domains = abstract_measure_domains(spec, cfg.numeric_representatives)
        self.defaults = {m: dom[0] for m, dom in self.domains.items()}
        self.events = tuple(sorted(spec.event_names))
        self.by_trigger: dict[str, list] = {}
        for r in spec.rules:
            self.by_trigger.setdefault(r.trigger_event, []).append(r)
        self.required_after: dict[str, frozenset[str]] = {
            e: frozenset(resp.event for r in rules for resp in r.responses()
                         if resp.polarity is Polarity.REQUIRE)
            for e, rules in self.by_trigger.items()
        }
        self._outcomes: dict = {}
        self._candidates: dict = {}
        self._all_sets: list[frozenset[str]] | None = None

    def closure(self, seeds) -> frozenset[str]:
        out = set(seeds)
        todo = list(out)
        while todo:
            for e in self.required_after.get(todo.pop(), ()):
                if e not in out:
                    out.add(e)
                    todo.append(e)
        return frozenset(out)

    def candidates(self, seeds: frozenset[str]) -> list[frozenset[str]]:
        """Event sets of size at most k over the closure of ``seeds``, smallest first."""
        hit = self._candidates.get(seeds)
        if hit is None:
            pool = sorted(self.closure(seeds))
            hit = [frozenset(c) for n in range(min(self.k, len(pool)) + 1)
                   for c in combinations(pool, n) if self._grounded(c, seeds)]
            self._candidates[seeds] = hit
        return hit

    def _grounded(self, events, seeds) -> bool:
        """Every event is a seed or required by a rule another grounded event triggers."""
        chosen = set(events)
        reached = chosen & seeds
        todo = list(reached)
        while todo:
            for e in self.required_after.get(todo.pop(), ()):
                if e in chosen and e not in reached:
                    reached.add(e)
                    todo.append(e)
        return len(reached) == len(chosen)

    def all_event_sets(self) -> list[frozenset[str]]:
        if self._all_sets is None:
            self._all_sets = [frozenset(c) for n in range(min(self.k, len(self.events)) + 1)
                              for c in combinations(self.events, n)]
        return self._all_sets

    def outcomes(self, events: frozenset[str], cond: Condition | None = None) -> list[Outcome]:
        rules = [r for r in self.spec.rules if r.trigger_event in events]
        key = (tuple(r.id for r in rules), cond)
        hit = self._outcomes.get(key)
        if hit is not None:
            return hit
        used: set[str] = set(measures_in(cond))
        for r in rules:
            used.update(measures_in(r.trigger_cond))
            for d in r.defeaters:
                used.update(measures_in(d.cond))
        names = [m for m in self.domains if m in used]
        seen = set()
        hit = []
        for combo in product(*(self.domains[m] for m in names)):
            val = dict(self.defaults)
            val.update(zip(names, combo))
            obligations = []
            for r in rules:
                if not evaluate_condition(r.trigger_cond, val, self.sorts):
                    continue
                idx, resp = resolve_defeaters(r, val, self.sorts)
                if resp is None:
                    continue
                ticks = INF if resp.deadline is None else self.scale.ticks(resp.deadline)
                obligations.append(NewObligation(r.id, resp.polarity, resp.event, ticks))
            holds = evaluate_condition(cond, val, self.sorts) if cond is not None else True
            sig = (tuple(obligations), holds)
            if sig in seen:
                continue
            seen.add(sig)
            hit.append(Outcome(tuple(sorted(val.items())), tuple(obligations),
                               frozenset(o.rule for o in obligations), holds))
        self._outcomes[key] = hit
        return hit


def step(reqs: frozenset, forbs: frozenset, events: frozenset[str],
         new: tuple[NewObligation, ...], focus: str | None = None) -> Step | None:
    """Advance over one tick; ``None`` if the tick violates an obligation.

    Prohibitions are ``(event, tag, remaining)``; ``tag`` marks those owned by
    ``focus`` and is always False when ``focus`` is None.
    """
    for e, _, _ in forbs:
        if e in events:
            return None
    open_reqs: dict[str, float] = {}
    for e, rem in reqs:
        if e not in events:
            open_reqs[e] = min(rem, open_reqs.get(e, INF))
    new_forbs = []
    for ob in new:
        if ob.polarity is Polarity.FORBID:
            if ob.event in events:
                return None
            new_forbs.append((ob.event, focus is not None and ob.rule == focus, ob.ticks))
        elif ob.event not in events:
            open_reqs[ob.event] = min(ob.ticks, open_reqs.get(ob.event, INF))
    if any(rem == 0 for rem in open_reqs.values()):
        return None
    longest: dict[tuple[str, bool], float] = {}
    for e, tag, rem in (*forbs, *new_forbs):
        if rem > 0:
            longest[(e, tag)] = max(rem - 1, longest.get((e, tag), -1))
    return Step(
        frozenset((e, rem - 1) for e, rem in open_reqs.items()),
        frozenset((e, tag, rem) for (e, tag), rem in longest.items()),
        not open_reqs,
    )


def breadth_first(initial, bound: int, expand) -> list[Tick] | None:
    """Shortest tick sequence whose last transition is a goal.

    ``expand(state, level)`` yields ``(tick, next_state, is_goal)`` in a fixed order;
    ``next_state`` is None for transitions that cannot be extended.
    """
    parents = {initial: None}
    frontier = [initial]
    for level in range(bound):
        following = []
        for state in frontier:
            for tick, nxt, goal in expand(state, level):
                if goal:
                    return _path(parents, state) + [tick]
                if nxt is not None and nxt not in parents:
                    parents[nxt] = (state, tick)
                    following.append(nxt)
        frontier = following
    return None


def _path(parents, state) -> list[Tick]:
    ticks = []
    while parents[state] is not None:
        state, tick = parents[state]
        ticks.append(tick)
    return ticks[::-1]


def _tick(events: frozenset[str], oc: Outcome) -> Tick:
    return Tick(events, oc.valuation)


def _prepare(spec: SleecSpec, focus: str, cfg: CheckConfig) -> tuple[Model, TickScale]:
    scale = require_bound(spec, cfg)
    sub = slice_relevant_rules(spec, {focus}) if cfg.slicing else spec
    return Model(sub, cfg, scale), scale


def _complete(spec: SleecSpec, ticks: list[Tick]) -> Trace:
    """Give every measure of the full spec a value (sliced search omits some)."""
    defaults = {m.name: default_value(m.sort) for m in spec.measures}
    return Trace(tuple(Tick.of(t.events, {**defaults, **t.valuation}) for t in ticks))


# -- vacuity ------------------------------------------------------------------

def find_trigger_witness(spec: SleecSpec, rule_id: str, cfg: CheckConfig) -> Trace | None:
    """Shortest compliant trace in which ``rule_id`` raises an obligation."""
    model, _ = _prepare(spec, rule_id, cfg)
    trigger = spec.rule(rule_id).trigger_event

    def expand(state, level):
        reqs, forbs, activated = state
        seeds = {e for e, _ in reqs}
        if not activated:
            seeds.add(trigger)
        for events in model.candidates(frozenset(seeds)):
            for oc in model.outcomes(events):
                nxt = step(reqs, forbs, events, oc.obligations)
                if nxt is None:
                    continue
                now = activated or rule_id in oc.activated
                yield (_tick(events, oc), (nxt.reqs, nxt.forbs, now),
                       now and nxt.compliant)

    ticks = breadth_first((frozenset(), frozenset(), False), cfg.bound_ticks, expand)
    return None if ticks is None else _complete(spec, ticks)


# -- purposes -----------------------------------------------------------------

def check_purpose(spec: SleecSpec, purpose_id: str, cfg: CheckConfig) -> Trace | None:
    """Shortest compliant trace exhibiting the purpose, if one fits the bound."""
    model, _ = _prepare(spec, purpose_id, cfg)
    p = spec.purpose(purpose_id)

    def expand(state, level):
        reqs, forbs, phase = state
        seeds = {e for e, _ in reqs}
        if phase == 0:
            seeds.add(p.while_event)
        if phase <= 1:
            seeds.add(p.exists_event)
        for events in model.candidates(frozenset(seeds)):
            cond = p.cond if p.exists_event in events else None
            for oc in model.outcomes(events, cond):
                nxt = step(reqs, forbs, events, oc.obligations)
                if nxt is None:
                    continue
                now = phase
                if now == 0 and p.while_event in events:
                    now = 1
                if now == 1 and p.exists_event in events and oc.cond:
                    now = 2
                yield _tick(events, oc), (nxt.reqs, nxt.forbs, now), now == 2 and nxt.compliant

    start = 0 if p.while_event is not None else 1
    ticks = breadth_first((frozenset(), frozenset(), start), cfg.bound_ticks, expand)
    return None if ticks is None else _complete(spec, ticks)


# -- situational conflicts ----------------------------------------------------

def _clashes(forbs: frozenset, new: tuple[NewObligation, ...], focus: str) -> bool:
    """Whether a requirement raised now is covered by a prohibition, one side from ``focus``.

    A prohibition raised after a requirement starts later, so it never
    covers it; only requirements raised at this tick need checking.
    """
    fresh_forbs = [o for o in new if o.polarity is Polarity.FORBID]
    for req in new:
        if req.polarity is not Polarity.REQUIRE:
            continue
        for e, tagged, rem in forbs:
            if e == req.event and req.ticks <= rem and (tagged or req.rule == focus):
                return True
        for f in fresh_forbs:
            if f.event == req.event and req.ticks <= f.ticks and focus in (req.rule, f.rule):
                return True
    return False


def _may_clash(spec: SleecSpec, rule_id: str) -> bool:
    """Some rule can oppose one of ``rule_id``'s responses on the same event."""
    own = {(resp.event, resp.polarity) for resp in spec.rule(rule_id).responses()}
    return any((resp.event, other) in own
               for r in spec.rules for resp in r.responses()
               for other in Polarity if other is not resp.polarity)


def _partner_triggers(spec: SleecSpec, rule_id: str) -> set[str]:
    events = {resp.event for resp in spec.rule(rule_id).responses()}
    return {r.trigger_event for r in spec.rules
            if any(resp.event in events for resp in r.responses())}


def find_situational_conflict(spec: SleecSpec, rule_id: str, cfg: CheckConfig) -> Diagnosis | None:
    """A reachable, not yet violated situation where ``rule_id`` takes part in a clash."""
    if not cfg.continuation_check and not _may_clash(spec, rule_id):
        require_bound(spec, cfg)
        return None
    model, _ = _prepare(spec, rule_id, cfg)
    always = _partner_triggers(model.spec, rule_id) | {spec.rule(rule_id).trigger_event}

    def expand(state, level):
        reqs, forbs = state
        seeds = frozenset({e for e, _ in reqs} | always)
        for events in model.candidates(seeds):
            for oc in model.outcomes(events):
                nxt = step(reqs, forbs, events, oc.obligations, rule_id)
                if nxt is None:
                    continue
                yield (_tick(events, oc), (nxt.reqs, nxt.forbs),
                       _clashes(forbs, oc.obligations, rule_id))

    ticks = breadth_first((frozenset(), frozenset()), cfg.bound_ticks, expand)
    if ticks is not None:
        return clash_diagnosis(spec, rule_id, _complete(spec, ticks), cfg.bound_ticks)
    if cfg.continuation_check:
        return find_dead_end(spec, rule_id, cfg)
    return None


def clash_diagnosis(spec: SleecSpec, rule_id: str, witness: Trace, bound: int) -> Diagnosis:
    """Replay ``witness`` and name the clashing pair it exhibits."""
    pair = clashing_pair(spec, witness, rule_id)
    if pair is None:
        raise AssertionError(f"witness for {rule_id} does not replay to a clash")
    req, forb = pair
    return Diagnosis(SITUATIONAL, tuple(sorted({req.rule, forb.rule})), bound, witness, pair)


def clashing_pair(spec: SleecSpec, trace: Trace, rule_id: str | None = None):
    """First clashing (requirement, prohibition) pair in ``trace``, or None."""
    obligations = [s.obligation for _, s in obligation_states(spec, trace) if s is not None]
    reqs = [o for o in obligations if o.polarity is Polarity.REQUIRE]
    forbs = [o for o in obligations if o.polarity is Polarity.FORBID]
    pairs = [(r, f) for r in reqs for f in forbs
             if obligation_clash(r, f) and (rule_id is None or rule_id in (r.rule, f.rule))]
    if not pairs:
        return None
    return min(pairs, key=lambda p: (p[0].window[0], p[1].window[0], p[0].rule, p[1].rule))


# -- continuation exhaustion --------------------------------------------------

def find_dead_end(spec: SleecSpec, rule_id: str, cfg: CheckConfig) -> Diagnosis | None:
    """A prefix activating ``rule_id`` after which nothing within the bound complies.

    Only prefixes leaving room for a full deadline window are considered, so
    a dead end is not just a deadline cut off by the bound. Every event set
    is tried at each tick, which is exponential in the vocabulary.
    """
    model, scale = _prepare(spec, rule_id, cfg)
    horizon = 1 + scale.max_deadline
    bound = cfg.bound_ticks

    @lru_cache(maxsize=None)
    def can_comply(reqs: frozenset, forbs: frozenset, budget: int) -> bool:
        if not reqs:
            return True
        if budget == 0:
            return False
        for events in model.candidates(frozenset(e for e, _ in reqs)):
            for oc in model.outcomes(events):
                nxt = step(reqs, forbs, events, oc.obligations)
                if nxt is not None and can_comply(nxt.reqs, nxt.forbs, budget - 1):
                    return True
        return False

    def expand(state, level):
        reqs, forbs = state
        for events in model.all_event_sets():
            for oc in model.outcomes(events):
                nxt = step(reqs, forbs, events, oc.obligations)
                if nxt is None:
                    continue
                length = level + 1
                goal = (rule_id in oc.activated and length <= bound - horizon
                        and not can_comply(nxt.reqs, nxt.forbs, bound - length))
                yield _tick(events, oc), (nxt.reqs, nxt.forbs), goal

    # reaching a state earlier leaves more budget, so global dedup is safe here too
    ticks = breadth_first((frozenset(), frozenset()), max(0, bound - horizon), expand)
    if ticks is None:
        return None
    witness = _complete(spec, ticks)
    return Diagnosis(SITUATIONAL, dead_end_rules(spec, witness, rule_id), bound, witness)


def dead_end_rules(spec: SleecSpec, trace: Trace, rule_id: str) -> tuple[str, ...]:
    """``rule_id`` plus every rule with an obligation still open at the end of ``trace``."""
    last = len(trace) - 1
    rules = {rule_id}
    for _, s in obligation_states(spec, trace):
        if s is None:
            continue
        ob = s.obligation
        if s.status is Status.PENDING:
            rules.add(ob.rule)
        elif ob.polarity is Polarity.FORBID and ob.upper > last:
            rules.add(ob.rule)
    return tuple(sorted(rules))
