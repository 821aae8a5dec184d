"""Goal-model data types."""

from __future__ import annotations

from dataclasses import dataclass, field

from sleecgoal.sleec.ast import Condition, Duration, EventDef, Loc, MeasureDef

GOAL_KINDS = ("functional", "normative", "adaptation")
GOAL_TYPES = ("maintain", "achieve")
SLEEC_CLASSES = ("Social", "Legal", "Ethical", "Empathetic", "Cultural")
REFINEMENT_MODES = ("AND", "OR")

LIFECYCLE_PREFIXES = ("Start", "Pursuing", "Achieved", "ReportFailure")


@dataclass(frozen=True)
class NormativeAttrs:
    source: tuple[str, ...] = ()
    classes: tuple[str, ...] = ()
    norm_principle: str | None = None
    proxy: str | None = None
    added_value: str | None = None

    def missing(self) -> list[str]:
        out = []
        if not self.source:
            out.append("source")
        if not self.classes:
            out.append("class")
        for name in ("norm_principle", "proxy", "added_value"):
            if not getattr(self, name):
                out.append(name)
        return out


@dataclass(frozen=True)
class Goal:
    id: str
    kind: str
    type: str
    condition: Condition
    event: str
    context_event: str
    definition: str
    formal_def: str | None = None
    normative: NormativeAttrs | None = None
    label: str | None = None
    loc: Loc | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Task:
    id: str
    definition: str
    triggering_event: str
    temporal_constraint: Duration
    post_cond: Condition
    pre_cond: Condition | None = None
    obstacle_event: str | None = None
    index: int | None = None
    label: str | None = None
    loc: Loc | None = field(default=None, compare=False)

    @property
    def camel(self) -> str:
        return upper_camel(self.id)

    def lifecycle_event(self, prefix: str) -> str:
        return prefix + self.camel


@dataclass(frozen=True)
class Refinement:
    parent: str
    mode: str
    children: tuple[str, ...]
    loc: Loc | None = field(default=None, compare=False)


@dataclass(frozen=True)
class GoalModel:
    system_name: str
    events: tuple[EventDef, ...] = ()
    measures: tuple[MeasureDef, ...] = ()
    goals: tuple[Goal, ...] = ()
    tasks: tuple[Task, ...] = ()
    refinements: tuple[Refinement, ...] = ()

    def goal(self, goal_id: str) -> Goal:
        for g in self.goals:
            if g.id == goal_id:
                return g
        raise KeyError(goal_id)

    def task(self, task_id: str) -> Task:
        for t in self.tasks:
            if t.id == task_id:
                return t
        raise KeyError(task_id)

    def parents(self) -> dict[str, list[str]]:
        out: dict[str, list[str]] = {}
        for r in self.refinements:
            for c in r.children:
                out.setdefault(c, []).append(r.parent)
        return out

    def lifecycle_events(self) -> list[str]:
        return [t.lifecycle_event(p) for t in self.tasks for p in LIFECYCLE_PREFIXES]


def upper_camel(identifier: str) -> str:
    return "".join(part[:1].upper() + part[1:] for part in identifier.split("_") if part)
