"""Structural and name validation of goal models."""

from __future__ import annotations

from dataclasses import dataclass, field, replace

from sleecgoal.goals.model import GoalModel
from sleecgoal.sleec.resolve import condition_errors

CYCLIC = "CyclicRefinement"
UNREFINED = "UnrefinedGoal"
NON_TASK_LEAF = "NonTaskLeaf"
UNDECLARED = "UndeclaredIdentifier"
MISSING_NORMATIVE = "MissingNormativeAttrs"
SORT_MISMATCH = "SortMismatch"
DUPLICATE = "DuplicateDefinition"
MULTIPLE_PARENTS = "MultipleParents"
ORPHAN_TASK = "OrphanTask"


@dataclass(frozen=True)
class ValidationError:
    kind: str
    element: str
    message: str
    loc: tuple[int, int] | None = field(default=None, compare=False)

    def __str__(self) -> str:
        return f"{self.kind}: {self.message}"


def validate_goal_model(model: GoalModel) -> list[ValidationError]:
    errors: list[ValidationError] = []
    add = errors.append

    names: set[str] = set()
    for d in (*model.events, *model.measures):
        if d.name in names:
            add(ValidationError(DUPLICATE, d.name, f"{d.name!r} is declared more than once", d.loc))
        names.add(d.name)
    ids: dict[str, str] = {}
    for el, what in [(g, "goal") for g in model.goals] + [(t, "task") for t in model.tasks]:
        if el.id in ids:
            add(ValidationError(DUPLICATE, el.id, f"{what} id {el.id!r} is already used", el.loc))
        ids.setdefault(el.id, what)

    events = {e.name for e in model.events} | set(model.lifecycle_events())
    sorts = {m.name: m.sort for m in model.measures}

    def event_ref(owner, attr: str, name: str | None) -> None:
        if name is not None and name not in events:
            add(ValidationError(UNDECLARED, owner.id,
                                f"{owner.id}.{attr}: {name!r} is not a declared event", owner.loc))

    def cond_ref(owner, cond) -> None:
        for e in condition_errors(cond, sorts, owner.id, owner.loc):
            kind = SORT_MISMATCH if e.kind == "SortMismatch" else UNDECLARED
            add(ValidationError(kind, owner.id, e.message, e.loc))

    for g in model.goals:
        event_ref(g, "event", g.event)
        event_ref(g, "context_event", g.context_event)
        cond_ref(g, g.condition)
        if g.kind == "normative":
            missing = ["all normative attributes"] if g.normative is None else g.normative.missing()
            if missing:
                add(ValidationError(MISSING_NORMATIVE, g.id,
                                    f"normative goal {g.id} lacks {', '.join(missing)}", g.loc))
    for t in model.tasks:
        event_ref(t, "triggering_event", t.triggering_event)
        event_ref(t, "obstacle_event", t.obstacle_event)
        cond_ref(t, t.pre_cond)
        cond_ref(t, t.post_cond)

    errors += _structure_errors(model, ids)
    return errors


def _structure_errors(model: GoalModel, ids: dict[str, str]) -> list[ValidationError]:
    errors: list[ValidationError] = []
    add = errors.append
    children_of: dict[str, list[str]] = {}
    parent_count: dict[str, int] = {}

    for r in model.refinements:
        if r.parent not in ids:
            add(ValidationError(UNDECLARED, r.parent, f"refinement of unknown goal {r.parent!r}",
                                r.loc))
        elif ids[r.parent] != "goal":
            add(ValidationError(UNDECLARED, r.parent,
                                f"refinement parent {r.parent!r} is a task, not a goal", r.loc))
        if len(set(r.children)) != len(r.children):
            add(ValidationError(DUPLICATE, r.parent,
                                f"refinement of {r.parent} lists a child twice", r.loc))
        for c in dict.fromkeys(r.children):
            if c not in ids:
                add(ValidationError(UNDECLARED, c, f"{r.parent} is refined by unknown element {c!r}",
                                    r.loc))
                continue
            if c == r.parent:
                add(ValidationError(CYCLIC, c, f"{c} refines itself", r.loc))
                continue
            children_of.setdefault(r.parent, []).append(c)
            parent_count[c] = parent_count.get(c, 0) + 1

    for node, n in parent_count.items():
        if n > 1:
            add(ValidationError(MULTIPLE_PARENTS, node,
                                f"{node} appears in {n} refinements; the refinement graph must "
                                f"be a forest"))

    for cycle in _cycles(children_of):
        add(ValidationError(CYCLIC, cycle[0], "refinement cycle: " + " -> ".join(cycle)))

    for g in model.goals:
        if g.id in children_of:
            continue
        if g.id in parent_count:
            add(ValidationError(NON_TASK_LEAF, g.id,
                                f"goal {g.id} is a leaf of the refinement graph; leaves must be "
                                f"tasks", g.loc))
        else:
            add(ValidationError(UNREFINED, g.id, f"goal {g.id} is not refined into tasks", g.loc))
    for t in model.tasks:
        if t.id not in parent_count:
            add(ValidationError(ORPHAN_TASK, t.id, f"task {t.id} does not refine any goal", t.loc))
    return errors


def _cycles(graph: dict[str, list[str]]) -> list[list[str]]:
    """One representative path per strongly connected cycle, deterministic."""
    found: list[list[str]] = []
    color: dict[str, int] = {}
    stack: list[str] = []

    def visit(node: str) -> None:
        color[node] = 1
        stack.append(node)
        for nxt in graph.get(node, []):
            state = color.get(nxt, 0)
            if state == 0:
                visit(nxt)
            elif state == 1:
                found.append(stack[stack.index(nxt):] + [nxt])
        stack.pop()
        color[node] = 2

    for node in sorted(graph):
        if color.get(node, 0) == 0:
            visit(node)
    return found


def assign_task_indices(model: GoalModel) -> GoalModel:
    """Number tasks 1..n in declaration order."""
    tasks = tuple(replace(t, index=i) for i, t in enumerate(model.tasks, start=1))
    return replace(model, tasks=tasks)
