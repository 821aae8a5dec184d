"""Random small SLEEC specs for oracle-agreement and semantics property tests."""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from math import comb

from sleecgoal.checker import CheckConfig, abstract_measure_domains
from sleecgoal.semantics import Tick, Trace
from sleecgoal.sleec.ast import (
    And,
    Atom,
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
    SleecSpec,
    Sort,
)
from sleecgoal.sleec.resolve import minimum_bound

EVENT_NAMES = ("A", "B", "C", "D")
MEASURE_NAMES = ("p", "q")


@dataclass(frozen=True)
class Instance:
    spec: SleecSpec
    cfg: CheckConfig


def random_condition(rng: random.Random, measures: list[str], depth: int = 0):
    if not measures:
        return None
    roll = rng.random()
    if depth >= 1 or roll < 0.5:
        atom = Atom(rng.choice(measures))
        return Not(atom) if rng.random() < 0.4 else atom
    op = And if roll < 0.8 else Or
    return op(random_condition(rng, measures, depth + 1) or Atom(measures[0]),
              random_condition(rng, measures, depth + 1) or Atom(measures[0]))


def random_response(rng: random.Random, events: list[str], max_deadline: int) -> Response:
    polarity = Polarity.FORBID if rng.random() < 0.35 else Polarity.REQUIRE
    deadline = None
    if rng.random() < 0.7:
        deadline = Duration(rng.randint(1, max_deadline), "seconds")
    return Response(rng.choice(events), polarity, deadline)


def random_spec(rng: random.Random, n_events: int = 4, n_measures: int = 2, n_rules: int = 3,
                max_deadline: int = 2, purposes: bool = False) -> SleecSpec:
    events = list(EVENT_NAMES[:n_events])
    measures = list(MEASURE_NAMES[:n_measures])
    rules = []
    for i in range(1, n_rules + 1):
        cond = random_condition(rng, measures) if rng.random() < 0.5 else None
        defeaters = []
        for _ in range(rng.choice((0, 0, 1, 2))):
            if not measures:
                break
            resp = None if rng.random() < 0.3 else random_response(rng, events, max_deadline)
            defeaters.append(Defeater(random_condition(rng, measures), resp))
        rules.append(Rule(f"r{i}", rng.choice(events),
                          random_response(rng, events, max_deadline), cond, tuple(defeaters)))
    ps = []
    if purposes and rng.random() < 0.7:
        cond = random_condition(rng, measures) if rng.random() < 0.5 else None
        ps.append(Purpose("g1", rng.choice(events), cond,
                          rng.choice(events) if rng.random() < 0.6 else None))
    return SleecSpec(
        tuple(EventDef(e) for e in events),
        tuple(MeasureDef(m, Sort.boolean()) for m in measures),
        tuple(rules),
        tuple(ps),
    )


def enumeration_size(spec: SleecSpec, cfg: CheckConfig) -> int:
    """Number of trace prefixes the oracle walks through."""
    n = len(spec.events)
    sets = sum(comb(n, k) for k in range(min(cfg.max_events_per_tick, n) + 1))
    vals = 1
    for dom in abstract_measure_domains(spec).values():
        vals *= len(dom)
    alphabet = sets * vals
    return sum(alphabet ** length for length in range(1, cfg.bound_ticks + 1))


def random_instance(rng: random.Random, cap: int = 12_000, purposes: bool = False,
                    max_rules: int = 3, max_events: int = 4, max_measures: int = 2,
                    max_simultaneous: int = 2, max_bound: int = 4) -> Instance:
    """A spec and config within the given limits whose oracle walk stays under ``cap``."""
    while True:
        spec = random_spec(
            rng,
            n_events=rng.randint(1, max_events),
            n_measures=rng.randint(0, max_measures),
            n_rules=rng.randint(1, max_rules),
            purposes=purposes,
        )
        low = minimum_bound(spec)
        if low > max_bound:
            continue
        cfg = CheckConfig(rng.randint(low, max_bound), rng.randint(1, max_simultaneous))
        if enumeration_size(spec, cfg) <= cap:
            return Instance(spec, cfg)


def random_trace(rng: random.Random, spec: SleecSpec, length: int) -> Trace:
    names = [e.name for e in spec.events]
    domains = abstract_measure_domains(spec)
    ticks = []
    for _ in range(length):
        k = rng.randint(0, min(2, len(names)))
        events = rng.choice(list(combinations(names, k)))
        valuation = {m.name: rng.choice((False, True)) for m in spec.measures
                     if m.sort.kind == "boolean"}
        valuation.update({m: dom[0] for m, dom in domains.items() if m not in valuation})
        ticks.append(Tick.of(events, valuation))
    return Trace(tuple(ticks))


def random_goal_model(rng: random.Random):
    """A valid goal model with a random mix of goal types, tasks and obstacles."""
    from sleecgoal.goals.model import Goal, GoalModel, NormativeAttrs, Refinement, Task

    events = ("Request", "Alarm", "Timeout")
    measures = (MeasureDef("ok", Sort.boolean()), MeasureDef("busy", Sort.boolean()))
    n_goals = rng.randint(1, 3)
    goals, tasks, refinements = [], [], []
    for g in range(1, n_goals + 1):
        kind = rng.choice(("functional", "normative", "adaptation"))
        normative = None
        if kind == "normative":
            normative = NormativeAttrs(("policy",), ("Ethical",), "Privacy", "Consent", "trust")
        goals.append(Goal(
            id=f"G{g}", kind=kind, type=rng.choice(("maintain", "achieve")),
            condition=rng.choice((Atom("ok"), Not(Atom("busy")), And(Atom("ok"), Atom("busy")))),
            event=rng.choice(events), context_event=rng.choice(events),
            definition=f"goal {g}", normative=normative,
        ))
        children = []
        for _ in range(rng.randint(1, 3)):
            t = len(tasks) + 1
            tasks.append(Task(
                id=f"Step{t}", definition=f"task {t}",
                triggering_event=rng.choice(events),
                temporal_constraint=Duration(rng.randint(1, 5), rng.choice(("seconds", "minutes"))),
                post_cond=rng.choice((Atom("ok"), Not(Atom("busy")))),
                pre_cond=rng.choice((None, Atom("ok"))),
                obstacle_event=rng.choice((None, rng.choice(events))),
            ))
            children.append(f"Step{t}")
        refinements.append(Refinement(f"G{g}", rng.choice(("AND", "OR")), tuple(children)))
    return GoalModel("Random", tuple(EventDef(e) for e in events), measures, tuple(goals),
                     tuple(tasks), tuple(refinements))
