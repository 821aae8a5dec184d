"""Search parameters shared by the checker and the oracle."""

from __future__ import annotations

from dataclasses import dataclass, field

from sleecgoal.errors import BoundTooSmall
from sleecgoal.sleec.ast import SleecSpec, Value
from sleecgoal.sleec.resolve import TickScale, minimum_bound, normalize_durations


@dataclass(frozen=True)
class CheckConfig:
    bound_ticks: int
    max_events_per_tick: int = 3
    slicing: bool = True
    numeric_representatives: dict[str, tuple[Value, ...]] | None = field(default=None, hash=False)
    # Also report prefixes after which no continuation within the bound is
    # compliant, even without a clashing pair. Exhaustive, so keep bounds small.
    continuation_check: bool = False

    def __post_init__(self) -> None:
        if self.bound_ticks < 1:
            raise ValueError("bound_ticks must be positive")
        if self.max_events_per_tick < 1:
            raise ValueError("max_events_per_tick must be positive")


def require_bound(spec: SleecSpec, cfg: CheckConfig, scale: TickScale | None = None) -> TickScale:
    """Return the tick scale of ``spec``; raise if the bound cannot hold its deadlines."""
    scale = scale or normalize_durations(spec)
    minimum = minimum_bound(spec, scale)
    if cfg.bound_ticks < minimum:
        raise BoundTooSmall(cfg.bound_ticks, minimum)
    return scale
