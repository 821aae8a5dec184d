"""SLEEC rule language: parsing, checking, normalization, printing."""

from sleecgoal.sleec.ast import (
    And,
    Atom,
    BoolLit,
    Compare,
    Condition,
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
    ScaleRef,
    SleecSpec,
    Sort,
)
from sleecgoal.sleec.parser import parse_sleec
from sleecgoal.sleec.printer import format_condition, format_rule, print_sleec
from sleecgoal.sleec.resolve import (
    SemanticError,
    TickScale,
    check_names_and_types,
    minimum_bound,
    normalize_durations,
)

__all__ = [
    "And", "Atom", "BoolLit", "Compare", "Condition", "Defeater", "Duration",
    "EventDef", "MeasureDef", "Not", "Or", "Polarity", "Purpose", "Response",
    "Rule", "ScaleRef", "SemanticError", "SleecSpec", "Sort", "TickScale",
    "check_names_and_types", "format_condition", "format_rule", "minimum_bound",
    "normalize_durations", "parse_sleec", "print_sleec",
]
