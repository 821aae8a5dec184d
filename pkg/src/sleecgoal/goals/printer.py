"""Canonical ``.gsl`` printer (round-trips through ``parse_goal_model``)."""

from __future__ import annotations

from sleecgoal.goals.model import Goal, GoalModel, Task
from sleecgoal.lexer import quote
from sleecgoal.sleec.printer import format_condition, format_duration, format_measure


def _header(keyword: str, ident: str, label: str | None) -> str:
    return f"{keyword} {ident}" + (f" {quote(label)}" if label is not None else "")


def format_goal(goal: Goal) -> list[str]:
    lines = [_header(f"{goal.kind} goal", goal.id, goal.label)]
    attrs: list[tuple[str, str]] = [("type", goal.type)]
    n = goal.normative
    if n is not None:
        if n.source:
            attrs.append(("source", ", ".join(quote(s) for s in n.source)))
        if n.classes:
            attrs.append(("class", ", ".join(n.classes)))
        for key in ("norm_principle", "proxy", "added_value"):
            value = getattr(n, key)
            if value is not None:
                attrs.append((key, quote(value)))
    attrs += [
        ("condition", format_condition(goal.condition)),
        ("event", goal.event),
        ("context_event", goal.context_event),
        ("def", quote(goal.definition)),
    ]
    if goal.formal_def is not None:
        attrs.append(("formal_def", quote(goal.formal_def)))
    lines += [f"  {k}: {v}" for k, v in attrs]
    lines.append("end")
    return lines


def format_task(task: Task) -> list[str]:
    lines = [_header("task", task.id, task.label)]
    attrs = [("def", quote(task.definition))]
    if task.pre_cond is not None:
        attrs.append(("pre_cond", format_condition(task.pre_cond)))
    attrs += [
        ("triggering_event", task.triggering_event),
        ("temporal_constraint", format_duration(task.temporal_constraint)),
        ("post_cond", format_condition(task.post_cond)),
    ]
    if task.obstacle_event is not None:
        attrs.append(("obstacle_event", task.obstacle_event))
    lines += [f"  {k}: {v}" for k, v in attrs]
    lines.append("end")
    return lines


def print_goal_model(model: GoalModel) -> str:
    lines = [f"system {model.system_name}", ""]
    if model.events or model.measures:
        lines.append("vocabulary")
        lines += [f"  event {e.name}" for e in model.events]
        lines += [f"  {format_measure(m)}" for m in model.measures]
        lines += ["end", ""]
    for g in model.goals:
        lines += format_goal(g) + [""]
    for t in model.tasks:
        lines += format_task(t) + [""]
    for r in model.refinements:
        lines.append(f"refine {r.parent} {r.mode} {', '.join(r.children)}")
    return "\n".join(lines).rstrip("\n") + "\n"
