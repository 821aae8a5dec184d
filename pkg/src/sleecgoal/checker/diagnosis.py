"""Checker findings and their JSON form."""

from __future__ import annotations

from dataclasses import asdict, dataclass

from sleecgoal.semantics import Obligation, Trace
from sleecgoal.tracefile import trace_to_json
from sleecgoal.translate import TraceEntry

VACUOUS = "vacuous"
SITUATIONAL = "situational"
PURPOSE_UNSAT = "purpose_unsat"
KINDS = (VACUOUS, SITUATIONAL, PURPOSE_UNSAT)


@dataclass(frozen=True)
class Diagnosis:
    """A finding about one rule, a pair of rules, or a purpose.

    Vacuous and purpose findings report that no witness exists up to
    ``bound_used``; they carry no trace. ``clash`` is ``(requirement,
    prohibition)`` and is only set for situational findings that were
    detected through a clashing pair.
    """

    kind: str
    rules: tuple[str, ...]
    bound_used: int
    witness: Trace | None = None
    clash: tuple[Obligation, Obligation] | None = None
    value_context: tuple[TraceEntry, ...] = ()

    @property
    def key(self) -> tuple[str, tuple[str, ...]]:
        return self.kind, self.rules

    def to_json(self) -> dict:
        clash = None
        if self.clash is not None:
            req, forb = self.clash
            clash = {
                "event": req.event,
                "require_window": _window(req),
                "forbid_window": _window(forb),
            }
        return {
            "kind": self.kind,
            "rules": list(self.rules),
            "bound": self.bound_used,
            "witness": trace_to_json(self.witness) if self.witness is not None else None,
            "clash": clash,
            "value_context": [asdict(e) for e in self.value_context],
        }


def _window(ob: Obligation) -> list[int | None]:
    # open-ended windows have no finite upper end
    return [ob.window[0], None if ob.open_ended else ob.window[1]]
