import random

import pytest

from conftest import load_sleec
from randspec import random_spec, random_trace
from sleecgoal.semantics import (
    Obligation,
    Status,
    Tick,
    Trace,
    activations,
    evaluate_condition,
    is_compliant,
    obligation_clash,
    obligation_states,
    resolve_defeaters,
)
from sleecgoal.sleec import Compare, Polarity, ScaleRef, parse_sleec

REQ, FORB = Polarity.REQUIRE, Polarity.FORBID


def trace(*ticks):
    return Trace(tuple(Tick.of(events, valuation) for events, valuation in ticks))


def spec_of(rules: str, measures: str = ""):
    return parse_sleec("def_start event A event B event C " + measures
                       + " def_end rule_start " + rules + " rule_end")


def test_scale_order_follows_declaration(bsn_rules):
    cond = Compare("riskLevel", ">", ScaleRef("medium"))
    sorts = bsn_rules.sorts
    assert evaluate_condition(cond, {"riskLevel": "high"}, sorts)
    assert not evaluate_condition(cond, {"riskLevel": "medium"}, sorts)
    with pytest.raises(ValueError):
        evaluate_condition(cond, {"riskLevel": "high"})


def test_numeric_comparisons():
    spec = spec_of("r := when A and n >= 3 and not n = 5 then B", "measure n: numeric")
    cond = spec.rules[0].trigger_cond
    assert [evaluate_condition(cond, {"n": v}) for v in (2, 3, 5, 9)] == [False, True, False, True]


def test_last_matching_defeater_wins():
    spec = spec_of("r := when A then B unless (x) then C unless (y) unless (z) then not B",
                   "measure x: boolean measure y: boolean measure z: boolean")
    (r,) = spec.rules
    val = {"x": True, "y": True, "z": True}
    assert resolve_defeaters(r, val) == (3, r.defeaters[2].response)
    assert resolve_defeaters(r, {**val, "z": False}) == (2, None)
    assert resolve_defeaters(r, {"x": True, "y": False, "z": False})[0] == 1
    assert resolve_defeaters(r, {"x": False, "y": False, "z": False}) == (None, r.response)


def test_windows_are_inclusive(bsn_rules):
    t = trace(({"AdaptationExecuted"}, {}), ((), {}), ({"ExplainAdaptation"}, {}))
    t = Trace(tuple(Tick.of(x.events, {"trackVitals": False, "riskLevel": "low",
                                       "userConsent": True}) for x in t.ticks))
    ((rec, state),) = obligation_states(bsn_rules, t)
    assert rec.obligation.window == (0, 2)
    assert state.status is Status.DISCHARGED and state.at == 2
    assert is_compliant(bsn_rules, t).compliant


def test_requirement_violated_when_window_closes():
    spec = spec_of("r := when A then B within 1 seconds")
    t = trace(({"A"}, {}), ((), {}))
    ((_, state),) = obligation_states(spec, t)
    assert state.status is Status.VIOLATED and state.at == 1
    assert is_compliant(spec, t).is_violated


def test_requirement_pending_inside_window():
    spec = spec_of("r := when A then B within 2 seconds")
    assert is_compliant(spec, trace(({"A"}, {}))).status == "pending"


def test_open_ended_requirement_stays_pending():
    spec = spec_of("r := when A then B")
    t = trace(({"A"}, {}), ((), {}), ((), {}))
    (rec,) = activations(spec, t)
    assert rec.obligation.open_ended and rec.obligation.window == (0, 2)
    assert is_compliant(spec, t).status == "pending"


def test_prohibition_covers_activation_tick():
    spec = spec_of("r := when A then not B within 2 seconds")
    assert is_compliant(spec, trace(({"A", "B"}, {}))).is_violated
    assert is_compliant(spec, trace(({"A"}, {}), ((), {}), ((), {}), ({"B"}, {}))).compliant


def test_cancelled_activation_has_no_obligation():
    spec = spec_of("r := when A then B unless (x)", "measure x: boolean")
    (rec,) = activations(spec, trace(({"A"}, {"x": True})))
    assert rec.cancelled and rec.matched_defeater == 1


def test_r2_witness_by_hand():
    spec = load_sleec("r2.sleec")
    t = trace(({"AdaptationExecuted"}, {}), ({"ExplainAdaptation"}, {}))
    assert is_compliant(spec, t).compliant


def ob(polarity, lo, hi, open_ended=False, event="E"):
    return Obligation("r", polarity, event, (lo, hi), open_ended)


@pytest.mark.parametrize("req, forb, clash", [
    (ob(REQ, 0, 5), ob(FORB, 0, 5), True),
    (ob(REQ, 1, 3), ob(FORB, 0, 5), True),
    (ob(REQ, 0, 6), ob(FORB, 0, 5), False),
    (ob(REQ, 0, 3), ob(FORB, 1, 5), False),
    (ob(REQ, 0, 4, True), ob(FORB, 0, 4, True), True),
    (ob(REQ, 0, 4, True), ob(FORB, 0, 4), False),
    (ob(REQ, 1, 2), ob(FORB, 0, 4, True), True),
    (ob(REQ, 0, 5), ob(FORB, 0, 5, event="F"), False),
    (ob(REQ, 0, 5), ob(REQ, 0, 5), False),
])
def test_obligation_clash(req, forb, clash):
    assert obligation_clash(req, forb) is clash
    assert obligation_clash(forb, req) is clash


def test_violation_is_monotone_under_extension():
    rng = random.Random(11)
    for _ in range(300):
        spec = random_spec(rng, n_events=rng.randint(1, 4), n_measures=rng.randint(0, 2),
                           n_rules=rng.randint(1, 3))
        t = random_trace(rng, spec, rng.randint(1, 5))
        longer = t.extend(*random_trace(rng, spec, rng.randint(1, 3)).ticks)
        if is_compliant(spec, t).is_violated:
            assert is_compliant(spec, longer).is_violated
