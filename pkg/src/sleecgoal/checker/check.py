"""Whole-spec checking: every rule and purpose, merged into one report."""

from __future__ import annotations

from dataclasses import replace

from sleecgoal.checker.config import CheckConfig, require_bound
from sleecgoal.checker.diagnosis import PURPOSE_UNSAT, VACUOUS, Diagnosis
from sleecgoal.checker.search import check_purpose, find_situational_conflict, find_trigger_witness
from sleecgoal.sleec.ast import SleecSpec
from sleecgoal.translate import TraceabilityMap


def check_spec(spec: SleecSpec, cfg: CheckConfig,
               trace_map: TraceabilityMap | None = None) -> list[Diagnosis]:
    """Vacuity and situational checks per rule, satisfiability per purpose.

    A pair found from both of its rules is reported once. Findings are
    sorted by kind, then by rule ids.
    """
    require_bound(spec, cfg)
    found: dict[tuple, Diagnosis] = {}

    def add(d: Diagnosis) -> None:
        found.setdefault(d.key, d)

    for r in spec.rules:
        if find_trigger_witness(spec, r.id, cfg) is None:
            add(Diagnosis(VACUOUS, (r.id,), cfg.bound_ticks))
    for r in spec.rules:
        d = find_situational_conflict(spec, r.id, cfg)
        if d is not None:
            add(d)
    for p in spec.purposes:
        if check_purpose(spec, p.id, cfg) is None:
            add(Diagnosis(PURPOSE_UNSAT, (p.id,), cfg.bound_ticks))

    out = sorted(found.values(), key=lambda d: d.key)
    if trace_map is not None:
        out = [replace(d, value_context=tuple(trace_map.for_ids(d.rules))) for d in out]
    return out
