"""Goal model to SLEEC compilation via the fluent task encoding.

Per goal (numbered in declaration order)::

    maintain   P<n> := exists Event and Condition while ContextEvent      (purpose)
    achieve    P<n> := when ContextEvent and Condition then Event          (rule)

Per task with index k and identifier Id::

    RuleT<k>_1        := when TriggeringEvent and PreCond then StartId
    RuleT<k>_2        := when StartId then PursuingId within TemporalConstraint
    RuleT<k>_3        := when PursuingId and PostCond then AchievedId
                         unless (not PostCond) then ReportFailureId
    RuleT<k>_Obstacle := when ObstacleEvent then not PursuingId          (optional)
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass

from sleecgoal.errors import TranslationError
from sleecgoal.goals.model import LIFECYCLE_PREFIXES, Goal, GoalModel, Task
from sleecgoal.goals.validate import assign_task_indices
from sleecgoal.sleec.ast import (
    TRUE,
    Defeater,
    EventDef,
    Not,
    Polarity,
    Purpose,
    Response,
    Rule,
    SleecSpec,
)
from sleecgoal.sleec.printer import print_sleec

NAME_COLLISION = "NameCollision"

_EVENT_TEMPLATE = {
    "Start": ("T1", "triggering_event"),
    "Pursuing": ("T2", "temporal_constraint"),
    "Achieved": ("T3", "post_cond"),
    "ReportFailure": ("T3", "post_cond"),
}
_RULE_TEMPLATE = {
    "1": ("T1", "triggering_event"),
    "2": ("T2", "temporal_constraint"),
    "3": ("T3", "post_cond"),
    "Obstacle": ("Obstacle", "obstacle_event"),
}


@dataclass(frozen=True)
class FluentDecl:
    task_id: str
    initiating_event: str
    terminating_event: str
    initially: bool = False

    def render(self) -> str:
        return (f"fluent {self.task_id} = <{{{self.initiating_event}}}, "
                f"{{{self.terminating_event}}}> initially {str(self.initially).lower()}")


@dataclass(frozen=True)
class TraceEntry:
    generated: str
    source: str
    attribute: str
    template: str
    norm_principle: str | None = None
    proxy: str | None = None


@dataclass(frozen=True)
class TraceabilityMap:
    entries: tuple[TraceEntry, ...] = ()

    def lookup(self, generated: str) -> TraceEntry | None:
        for e in self.entries:
            if e.generated == generated:
                return e
        return None

    def for_ids(self, ids) -> list[TraceEntry]:
        wanted = set(ids)
        return [e for e in self.entries if e.generated in wanted]

    def to_json(self) -> str:
        return json.dumps({"entries": [asdict(e) for e in self.entries]}, indent=2) + "\n"

    @classmethod
    def from_json(cls, text: str) -> "TraceabilityMap":
        data = json.loads(text)
        fields = ("generated", "source", "attribute", "template", "norm_principle", "proxy")
        entries = []
        for raw in data["entries"]:
            entries.append(TraceEntry(**{k: raw.get(k) for k in fields}))
        return cls(tuple(entries))


def goal_id(seq: int) -> str:
    return f"P{seq}"


def task_rule_id(task: Task, suffix: str) -> str:
    return f"RuleT{task.index}_{suffix}"


def translate_goal(goal: Goal, seq: int) -> Rule | Purpose:
    cond = None if goal.condition == TRUE else goal.condition
    if goal.type == "maintain":
        return Purpose(goal_id(seq), goal.event, cond, goal.context_event)
    return Rule(goal_id(seq), goal.context_event, Response(goal.event), cond)


def translate_task(task: Task) -> tuple[list[Rule], list[EventDef], FluentDecl]:
    if task.index is None:
        raise ValueError(f"task {task.id} has no index; run assign_task_indices first")
    start, pursuing, achieved, failure = (task.lifecycle_event(p) for p in LIFECYCLE_PREFIXES)
    pre = None if task.pre_cond == TRUE else task.pre_cond
    post = None if task.post_cond == TRUE else task.post_cond
    rules = [
        Rule(task_rule_id(task, "1"), task.triggering_event, Response(start), pre),
        Rule(task_rule_id(task, "2"), start,
             Response(pursuing, deadline=task.temporal_constraint)),
        Rule(task_rule_id(task, "3"), pursuing, Response(achieved), post,
             (Defeater(Not(task.post_cond), Response(failure)),)),
    ]
    if task.obstacle_event is not None:
        rules.append(Rule(task_rule_id(task, "Obstacle"), task.obstacle_event,
                          Response(pursuing, Polarity.FORBID)))
    events = [EventDef(e) for e in (start, pursuing, achieved, failure)]
    return rules, events, FluentDecl(task.id, start, achieved)


def translate_model(model: GoalModel) -> tuple[SleecSpec, TraceabilityMap]:
    spec, _ = _compile(model)
    return spec, build_traceability(model, spec)


def fluent_decls(model: GoalModel) -> list[FluentDecl]:
    return _compile(model)[1]


def _compile(model: GoalModel) -> tuple[SleecSpec, list[FluentDecl]]:
    if any(t.index is None for t in model.tasks):
        model = assign_task_indices(model)
    taken = {e.name for e in model.events} | {m.name for m in model.measures}
    rules: list[Rule] = []
    purposes: list[Purpose] = []
    for seq, goal in enumerate(model.goals, start=1):
        out = translate_goal(goal, seq)
        (purposes if isinstance(out, Purpose) else rules).append(out)
    events = list(model.events)
    fluents = []
    for task in model.tasks:
        task_rules, task_events, fluent = translate_task(task)
        for e in task_events:
            if e.name in taken:
                raise TranslationError(
                    NAME_COLLISION,
                    f"generated event {e.name!r} for task {task.id} collides with an existing name",
                )
            taken.add(e.name)
        events += task_events
        rules += task_rules
        fluents.append(fluent)
    spec = SleecSpec(tuple(events), tuple(model.measures), tuple(rules), tuple(purposes))
    return spec, fluents


def _normative_ancestor(model: GoalModel, element_id: str) -> Goal | None:
    parents = model.parents()
    goals = {g.id: g for g in model.goals}
    seen = set()
    node = element_id
    while node not in seen:
        seen.add(node)
        g = goals.get(node)
        if g is not None and g.kind == "normative" and g.normative is not None:
            return g
        ups = parents.get(node)
        if not ups:
            return None
        node = ups[0]
    return None


def build_traceability(model: GoalModel, spec: SleecSpec) -> TraceabilityMap:
    if any(t.index is None for t in model.tasks):
        model = assign_task_indices(model)
    origin: dict[str, TraceEntry] = {}
    origin_events: dict[str, TraceEntry] = {}
    for seq, goal in enumerate(model.goals, start=1):
        n = goal.normative if goal.kind == "normative" else None
        template = "P1" if goal.type == "maintain" else "P2"
        origin[goal_id(seq)] = TraceEntry(
            goal_id(seq), goal.id, "event", template,
            n.norm_principle if n else None, n.proxy if n else None,
        )
    for task in model.tasks:
        anc = _normative_ancestor(model, task.id)
        principle = anc.normative.norm_principle if anc else None
        proxy = anc.normative.proxy if anc else None
        for suffix, (template, attr) in _RULE_TEMPLATE.items():
            rid = task_rule_id(task, suffix)
            origin[rid] = TraceEntry(rid, task.id, attr, template, principle, proxy)
        for prefix, (template, attr) in _EVENT_TEMPLATE.items():
            name = task.lifecycle_event(prefix)
            origin_events[name] = TraceEntry(name, task.id, attr, template, principle, proxy)

    entries = [origin[i] for i in [r.id for r in spec.rules] + [p.id for p in spec.purposes]
               if i in origin]
    entries += [origin_events[e.name] for e in spec.events if e.name in origin_events]
    return TraceabilityMap(tuple(entries))


def render_translation(model: GoalModel) -> str:
    """The ``.sleec`` text emitted for a model, fluent declarations as a header."""
    spec, fluents = _compile(model)
    header = [f"generated from goal model {model.system_name}"]
    header += [f.render() for f in fluents]
    return print_sleec(spec, header)
