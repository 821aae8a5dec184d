"""Parser for ``.gsl`` goal-model documents.

Example::

    system BSN

    vocabulary
      event MeetingUser
      measure purposeProtocolInformed: boolean
    end

    normative goal VitalSignsConsent "Vital Signs Consent"
      type: achieve
      class: Ethical, Legal, Social
      ...
    end

    task InformPurposeAndProtocol
      triggering_event: MeetingUser
      ...
    end

    refine VitalSignsConsent AND InformPurposeAndProtocol, ObtainConsentFullTracking
"""

from __future__ import annotations

from sleecgoal.errors import MissingAttribute, ParseError
from sleecgoal.goals.model import (
    GOAL_KINDS,
    GOAL_TYPES,
    REFINEMENT_MODES,
    SLEEC_CLASSES,
    Goal,
    GoalModel,
    NormativeAttrs,
    Refinement,
    Task,
)
from sleecgoal.lexer import IDENT, STRING, TokenStream, tokenize
from sleecgoal.sleec import parser as sleec_parser
from sleecgoal.sleec.ast import EventDef

RESERVED = sleec_parser.RESERVED | frozenset({
    "system", "vocabulary", "end", "goal", "task", "refine", "AND", "OR",
    *GOAL_KINDS,
})

TEXT, TEXT_LIST, IDENT_LIST, EVENT, CONDITION, DURATION, GOAL_TYPE = range(7)

GOAL_ATTRS = {
    "type": GOAL_TYPE,
    "condition": CONDITION,
    "event": EVENT,
    "context_event": EVENT,
    "def": TEXT,
    "formal_def": TEXT,
}
NORMATIVE_ATTRS = {
    "source": TEXT_LIST,
    "class": IDENT_LIST,
    "norm_principle": TEXT,
    "proxy": TEXT,
    "added_value": TEXT,
}
TASK_ATTRS = {
    "def": TEXT,
    "pre_cond": CONDITION,
    "triggering_event": EVENT,
    "temporal_constraint": DURATION,
    "post_cond": CONDITION,
    "obstacle_event": EVENT,
}

REQUIRED_GOAL = ("type", "condition", "event", "context_event", "def")
REQUIRED_TASK = ("def", "triggering_event", "temporal_constraint", "post_cond")


def parse_goal_model(source: str) -> GoalModel:
    ts = TokenStream(tokenize(source), RESERVED)
    return _ModelParser(ts).model()


class _ModelParser:
    def __init__(self, ts: TokenStream):
        self.ts = ts

    def model(self) -> GoalModel:
        ts = self.ts
        ts.expect("system")
        name = ts.expect_ident().text
        events, measures, goals, tasks, refinements = [], [], [], [], []
        while not ts.at_kind("EOF"):
            if ts.accept("vocabulary"):
                while not ts.accept("end"):
                    d = sleec_parser.parse_definition(ts)
                    (events if isinstance(d, EventDef) else measures).append(d)
            elif ts.at("task"):
                tasks.append(self.task())
            elif ts.at("refine"):
                refinements.append(self.refinement())
            elif any(ts.at(k) for k in GOAL_KINDS):
                goals.append(self.goal())
            else:
                raise ts.error()
        return GoalModel(name, tuple(events), tuple(measures), tuple(goals),
                         tuple(tasks), tuple(refinements))

    def _header(self) -> tuple[str, str | None, tuple[int, int]]:
        tok = self.ts.expect_ident()
        label = self.ts.advance().text if self.ts.at_kind(STRING) else None
        return tok.text, label, (tok.line, tok.col)

    def _attributes(self, allowed: dict[str, int], owner: str) -> tuple[dict, dict]:
        ts = self.ts
        values: dict[str, object] = {}
        locs: dict[str, tuple[int, int]] = {}
        while not ts.accept("end"):
            key = ts.current
            if key.kind != IDENT or ts.peek().text != ":":
                raise ts.error(f"expected an attribute ('name: value') or 'end' in {owner}, "
                               f"found {key}")
            if key.text not in allowed:
                raise ParseError(f"{owner}: unknown attribute {key.text!r}; allowed: "
                                 f"{', '.join(allowed)}", key.line, key.col)
            if key.text in values:
                raise ParseError(f"{owner}: attribute {key.text!r} given twice", key.line, key.col)
            ts.advance()
            ts.advance()
            values[key.text] = self._value(allowed[key.text])
            locs[key.text] = (key.line, key.col)
        return values, locs

    def _value(self, kind: int):
        ts = self.ts
        if kind == TEXT:
            if ts.at_kind(STRING):
                return ts.advance().text
            return ts.expect_ident().text
        if kind == TEXT_LIST:
            items = [ts.expect_kind(STRING).text]
            while ts.accept(","):
                items.append(ts.expect_kind(STRING).text)
            return tuple(items)
        if kind == IDENT_LIST:
            items = [self._sleec_class()]
            while ts.accept(","):
                items.append(self._sleec_class())
            return tuple(items)
        if kind == EVENT:
            return ts.expect_ident().text
        if kind == CONDITION:
            return sleec_parser.parse_condition(ts)
        if kind == DURATION:
            return sleec_parser.parse_duration(ts)
        tok = ts.expect_ident()
        if tok.text not in GOAL_TYPES:
            raise ParseError(f"goal type must be maintain or achieve, not {tok.text!r}",
                             tok.line, tok.col, frozenset(GOAL_TYPES))
        return tok.text

    def _sleec_class(self) -> str:
        tok = self.ts.expect_ident()
        if tok.text not in SLEEC_CLASSES:
            raise ParseError(f"{tok.text!r} is not one of {', '.join(SLEEC_CLASSES)}",
                             tok.line, tok.col, frozenset(SLEEC_CLASSES))
        return tok.text

    def goal(self) -> Goal:
        ts = self.ts
        kind = ts.advance().text
        ts.expect("goal")
        goal_id, label, loc = self._header()
        allowed = dict(GOAL_ATTRS)
        allowed.update(NORMATIVE_ATTRS)
        values, locs = self._attributes(allowed, f"goal {goal_id}")
        normative_keys = [k for k in NORMATIVE_ATTRS if k in values]
        if kind != "normative" and normative_keys:
            k = normative_keys[0]
            raise ParseError(f"goal {goal_id}: attribute {k!r} is only allowed on normative goals",
                             *locs[k])
        for k in REQUIRED_GOAL:
            if k not in values:
                raise MissingAttribute(k, f"goal {goal_id}", *loc)
        normative = None
        if normative_keys:
            normative = NormativeAttrs(
                source=values.get("source", ()),
                classes=values.get("class", ()),
                norm_principle=values.get("norm_principle"),
                proxy=values.get("proxy"),
                added_value=values.get("added_value"),
            )
        return Goal(
            id=goal_id, kind=kind, type=values["type"], condition=values["condition"],
            event=values["event"], context_event=values["context_event"],
            definition=values["def"], formal_def=values.get("formal_def"),
            normative=normative, label=label, loc=loc,
        )

    def task(self) -> Task:
        self.ts.expect("task")
        task_id, label, loc = self._header()
        values, _ = self._attributes(TASK_ATTRS, f"task {task_id}")
        for k in REQUIRED_TASK:
            if k not in values:
                raise MissingAttribute(k, f"task {task_id}", *loc)
        return Task(
            id=task_id, definition=values["def"],
            triggering_event=values["triggering_event"],
            temporal_constraint=values["temporal_constraint"],
            post_cond=values["post_cond"], pre_cond=values.get("pre_cond"),
            obstacle_event=values.get("obstacle_event"), label=label, loc=loc,
        )

    def refinement(self) -> Refinement:
        ts = self.ts
        ts.expect("refine")
        parent = ts.expect_ident()
        mode = next((m for m in REFINEMENT_MODES if ts.accept(m)), None)
        if mode is None:
            raise ts.error()
        children = [ts.expect_ident().text]
        while ts.accept(","):
            children.append(ts.expect_ident().text)
        return Refinement(parent.text, mode, tuple(children), (parent.line, parent.col))
