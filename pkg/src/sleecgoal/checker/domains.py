"""Finite representatives for measure values.

Conditions only compare measures against constants, so any two values that
agree on every comparison in the spec are interchangeable. One value per
equivalence class is enough for exhaustive search.
"""

from __future__ import annotations

from sleecgoal.sleec.ast import Compare, Condition, ScaleRef, SleecSpec, Value, measures_in


def conditions_of(spec: SleecSpec) -> list[Condition]:
    out: list[Condition] = []
    for r in spec.rules:
        if r.trigger_cond is not None:
            out.append(r.trigger_cond)
        out += [d.cond for d in r.defeaters]
    out += [p.cond for p in spec.purposes if p.cond is not None]
    return out


def _compare_nodes(cond: Condition):
    if isinstance(cond, Compare):
        yield cond
    for child in getattr(cond, "operand", None), getattr(cond, "left", None), getattr(cond, "right", None):
        if child is not None:
            yield from _compare_nodes(child)


def numeric_representatives(constants: set[int]) -> tuple[int, ...]:
    """``{c1-1, c1, ..., ck, ck+1}`` plus one midpoint per gap with interior values."""
    cs = sorted(constants)
    if not cs:
        return (0,)
    values = {cs[0] - 1, cs[-1] + 1, *cs}
    for a, b in zip(cs, cs[1:]):
        if b - a >= 2:
            values.add((a + b) // 2)
    return tuple(sorted(values))


def default_value(sort) -> Value:
    if sort.kind == "boolean":
        return False
    if sort.kind == "scale":
        return sort.values[0]
    return 0


def abstract_measure_domains(spec: SleecSpec,
                             overrides: dict[str, tuple[Value, ...]] | None = None
                             ) -> dict[str, tuple[Value, ...]]:
    conds = conditions_of(spec)
    used: set[str] = set()
    constants: dict[str, set[int]] = {}
    for c in conds:
        used.update(measures_in(c))
        for cmp in _compare_nodes(c):
            if not isinstance(cmp.value, (ScaleRef, bool)):
                constants.setdefault(cmp.measure, set()).add(cmp.value)
    domains: dict[str, tuple[Value, ...]] = {}
    for m in spec.measures:
        if overrides and m.name in overrides:
            domains[m.name] = tuple(overrides[m.name])
        elif m.name not in used:
            domains[m.name] = (default_value(m.sort),)
        elif m.sort.kind == "boolean":
            domains[m.name] = (False, True)
        elif m.sort.kind == "scale":
            domains[m.name] = tuple(m.sort.values)
        else:
            domains[m.name] = numeric_representatives(constants.get(m.name, set()))
    return domains
