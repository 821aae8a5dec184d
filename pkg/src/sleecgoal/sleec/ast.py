"""AST for SLEEC documents.

Nodes are frozen dataclasses; source locations are carried in ``loc`` but
excluded from equality so that structurally identical documents compare
equal regardless of layout.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum
from typing import Union

Loc = tuple[int, int]
Value = Union[bool, int, str]

UNIT_SECONDS = {"seconds": 1, "minutes": 60, "hours": 3600, "days": 86400}


class Polarity(str, Enum):
    REQUIRE = "require"
    FORBID = "forbid"


# -- conditions ---------------------------------------------------------------

@dataclass(frozen=True)
class BoolLit:
    value: bool


@dataclass(frozen=True)
class Atom:
    """Bare boolean measure; sugar for ``name = true``."""

    name: str
    loc: Loc | None = field(default=None, compare=False)


@dataclass(frozen=True)
class ScaleRef:
    """An identifier on the right of a comparison, i.e. a scale value."""

    name: str


@dataclass(frozen=True)
class Compare:
    measure: str
    op: str
    value: Union[bool, int, ScaleRef]
    loc: Loc | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Not:
    operand: "Condition"


@dataclass(frozen=True)
class And:
    left: "Condition"
    right: "Condition"


@dataclass(frozen=True)
class Or:
    left: "Condition"
    right: "Condition"


Condition = Union[BoolLit, Atom, Compare, Not, And, Or]

TRUE = BoolLit(True)


def conjoin(*conds: Condition | None) -> Condition | None:
    """Left-nested conjunction of the non-trivial operands."""
    parts = [c for c in conds if c is not None and c != TRUE]
    if not parts:
        return None
    out = parts[0]
    for c in parts[1:]:
        out = And(out, c)
    return out


def measures_in(cond: Condition | None) -> list[str]:
    if cond is None:
        return []
    if isinstance(cond, Atom):
        return [cond.name]
    if isinstance(cond, Compare):
        return [cond.measure]
    if isinstance(cond, Not):
        return measures_in(cond.operand)
    if isinstance(cond, (And, Or)):
        return measures_in(cond.left) + measures_in(cond.right)
    return []


# -- definitions --------------------------------------------------------------

@dataclass(frozen=True)
class Sort:
    kind: str  # "boolean" | "numeric" | "scale"
    values: tuple[str, ...] = ()

    @classmethod
    def boolean(cls) -> "Sort":
        return cls("boolean")

    @classmethod
    def numeric(cls) -> "Sort":
        return cls("numeric")

    @classmethod
    def scale(cls, *values: str) -> "Sort":
        return cls("scale", tuple(values))


@dataclass(frozen=True)
class EventDef:
    name: str
    loc: Loc | None = field(default=None, compare=False)


@dataclass(frozen=True)
class MeasureDef:
    name: str
    sort: Sort
    loc: Loc | None = field(default=None, compare=False)


# -- rules --------------------------------------------------------------------

@dataclass(frozen=True)
class Duration:
    magnitude: int
    unit: str = "seconds"

    @property
    def seconds(self) -> int:
        return self.magnitude * UNIT_SECONDS[self.unit]


@dataclass(frozen=True)
class Response:
    event: str
    polarity: Polarity = Polarity.REQUIRE
    deadline: Duration | None = None
    loc: Loc | None = field(default=None, compare=False)


@dataclass(frozen=True)
class Defeater:
    cond: Condition
    response: Response | None = None  # None cancels the obligation


@dataclass(frozen=True)
class Rule:
    id: str
    trigger_event: str
    response: Response
    trigger_cond: Condition | None = None
    defeaters: tuple[Defeater, ...] = ()
    loc: Loc | None = field(default=None, compare=False)

    def responses(self) -> list[Response]:
        """Base response followed by every defeater response, in order."""
        return [self.response] + [d.response for d in self.defeaters if d.response]


@dataclass(frozen=True)
class Purpose:
    id: str
    exists_event: str
    cond: Condition | None = None
    while_event: str | None = None
    loc: Loc | None = field(default=None, compare=False)


@dataclass(frozen=True)
class SleecSpec:
    events: tuple[EventDef, ...] = ()
    measures: tuple[MeasureDef, ...] = ()
    rules: tuple[Rule, ...] = ()
    purposes: tuple[Purpose, ...] = ()

    def measure(self, name: str) -> MeasureDef | None:
        for m in self.measures:
            if m.name == name:
                return m
        return None

    def rule(self, rule_id: str) -> Rule:
        for r in self.rules:
            if r.id == rule_id:
                return r
        raise KeyError(rule_id)

    def purpose(self, purpose_id: str) -> Purpose:
        for p in self.purposes:
            if p.id == purpose_id:
                return p
        raise KeyError(purpose_id)

    @property
    def event_names(self) -> list[str]:
        return [e.name for e in self.events]

    @property
    def sorts(self) -> dict[str, Sort]:
        return {m.name: m.sort for m in self.measures}
