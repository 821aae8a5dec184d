"""JSON trace files: ``[{"events": [...], "measures": {name: value}}, ...]``."""

from __future__ import annotations

import json
from typing import Any

from sleecgoal.semantics import Tick, Trace
from sleecgoal.sleec.ast import SleecSpec


class TraceFormatError(ValueError):
    pass


def trace_to_json(trace: Trace) -> list[dict[str, Any]]:
    return [
        {"events": sorted(t.events), "measures": dict(t.measures)}
        for t in trace.ticks
    ]


def trace_from_json(data: Any, spec: SleecSpec) -> Trace:
    if not isinstance(data, list):
        raise TraceFormatError("a trace must be a JSON array of ticks")
    events = set(spec.event_names)
    sorts = spec.sorts
    ticks = []
    for i, entry in enumerate(data):
        if not isinstance(entry, dict):
            raise TraceFormatError(f"tick {i}: expected an object")
        unknown_keys = set(entry) - {"events", "measures"}
        if unknown_keys:
            raise TraceFormatError(f"tick {i}: unknown keys {sorted(unknown_keys)}")
        names = entry.get("events", [])
        if not isinstance(names, list) or not all(isinstance(n, str) for n in names):
            raise TraceFormatError(f"tick {i}: 'events' must be a list of names")
        for n in names:
            if n not in events:
                raise TraceFormatError(f"tick {i}: undeclared event {n!r}")
        measures = entry.get("measures", {})
        if not isinstance(measures, dict):
            raise TraceFormatError(f"tick {i}: 'measures' must be an object")
        for name in measures:
            if name not in sorts:
                raise TraceFormatError(f"tick {i}: undeclared measure {name!r}")
        missing = sorted(set(sorts) - set(measures))
        if missing:
            raise TraceFormatError(f"tick {i}: no value for measure(s) {', '.join(missing)}")
        for name, value in measures.items():
            sort = sorts[name]
            ok = {
                "boolean": isinstance(value, bool),
                "numeric": isinstance(value, int) and not isinstance(value, bool),
                "scale": isinstance(value, str) and value in sort.values,
            }[sort.kind]
            if not ok:
                raise TraceFormatError(f"tick {i}: {value!r} is not a valid {sort.kind} "
                                       f"value for {name!r}")
        ticks.append(Tick.of(names, measures))
    return Trace(tuple(ticks))


def load_trace(text: str, spec: SleecSpec) -> Trace:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise TraceFormatError(f"invalid JSON: {exc}") from exc
    return trace_from_json(data, spec)


def dump_trace(trace: Trace) -> str:
    return json.dumps(trace_to_json(trace), indent=2, sort_keys=True)
