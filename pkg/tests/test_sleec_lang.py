import pytest
from hypothesis import given, settings

from conftest import FIXTURES, fixture_text, load_sleec
from sleecgoal.errors import ParseError
from sleecgoal.sleec import (
    And,
    Atom,
    Compare,
    Duration,
    Not,
    Polarity,
    ScaleRef,
    check_names_and_types,
    format_condition,
    minimum_bound,
    normalize_durations,
    parse_sleec,
    print_sleec,
)
from strategies import specs

HEADER = "def_start event A event B measure x: boolean measure n: numeric def_end\n"


def rules(body: str):
    return parse_sleec(HEADER + "rule_start\n" + body + "\nrule_end").rules


def test_bsn_rules_structure():
    spec = load_sleec("bsn.sleec")
    assert [e.name for e in spec.events] == [
        "UserAsksStopTracking", "StopTracking", "CallCaregiver",
        "AdaptationExecuted", "ExplainAdaptation", "UserRequestsPrivacy",
    ]
    assert [m.name for m in spec.measures] == ["trackVitals", "riskLevel"]
    assert spec.measure("riskLevel").sort.values == ("low", "medium", "high")
    r1 = spec.rule("r1")
    assert r1.trigger_cond == Atom("trackVital")
    assert r1.response.deadline == Duration(5, "minutes")
    (d,) = r1.defeaters
    assert d.cond == Compare("riskLevel", ">", ScaleRef("medium"))
    assert d.response.event == "CallCaregiver"
    r3 = spec.rule("r3")
    assert r3.response.polarity is Polarity.FORBID
    assert r3.trigger_cond == Not(Atom("userConsent"))


def test_bsn_rules_undeclared_measures_reported():
    errors = check_names_and_types(load_sleec("bsn.sleec"))
    assert {(e.kind, e.identifier) for e in errors} == {
        ("UndeclaredIdentifier", "trackVital"),
        ("UndeclaredIdentifier", "userConsent"),
    }
    assert all(e.loc is not None for e in errors)


def test_corrected_bsn_rules_is_clean(bsn_rules):
    assert check_names_and_types(bsn_rules) == []


def test_equals_true_is_bare_atom():
    (r,) = rules("r := when A and x = true then B")
    assert r.trigger_cond == Atom("x")


def test_trivial_guard_dropped():
    (r,) = rules("r := when A and true then B")
    assert r.trigger_cond is None


def test_ampersand_and_braces():
    (r,) = rules("r := when A and {x & n > 2} then B")
    assert r.trigger_cond == And(Atom("x"), Compare("n", ">", 2))


def test_units_singular_and_plural():
    a, b = rules("a := when A then B within 1 minute\nb := when A then B within 3 hour")
    assert a.response.deadline == Duration(1, "minutes")
    assert b.response.deadline == Duration(3, "hours")


def test_defeater_chain_and_cancellation():
    (r,) = rules("r := when A then B within 2 seconds unless (x) unless (n > 3) then not A")
    first, second = r.defeaters
    assert first.response is None
    assert second.response.polarity is Polarity.FORBID


@pytest.mark.parametrize("body, needle", [
    ("r := when A then B within 0 seconds", "positive"),
    ("r := when A then B within 2 weeks", "time unit"),
    ("r := when A then", "expected"),
    ("when := when A then B", "reserved"),
])
def test_parse_errors(body, needle):
    with pytest.raises(ParseError) as err:
        rules(body)
    assert needle in str(err.value)
    assert err.value.line >= 1


def test_event_case_enforced():
    with pytest.raises(ParseError, match="uppercase"):
        parse_sleec("def_start event alarm def_end rule_start rule_end")


def test_measure_case_enforced():
    with pytest.raises(ParseError, match="lowercase"):
        parse_sleec("def_start measure Risk: boolean def_end rule_start rule_end")


def test_error_position():
    with pytest.raises(ParseError) as err:
        parse_sleec("def_start\n  event A\ndef_end\nrule_start\n  r := when A then\nrule_end")
    assert (err.value.line, err.value.col) == (6, 1)


@pytest.mark.parametrize("body, kind", [
    ("r := when A and n then B", "SortMismatch"),
    ("r := when A and x > 2 then B", "SortMismatch"),
    ("r := when A then C", "UndeclaredIdentifier"),
    ("r := when A then B\nr := when B then A", "DuplicateDefinition"),
])
def test_semantic_errors(body, kind):
    spec = parse_sleec(HEADER + "rule_start\n" + body + "\nrule_end")
    assert kind in {e.kind for e in check_names_and_types(spec)}


def test_scale_value_must_belong_to_scale(bsn_rules):
    spec = parse_sleec(print_sleec(bsn_rules).replace("riskLevel > medium", "riskLevel > severe"))
    assert [e.kind for e in check_names_and_types(spec)] == ["SortMismatch"]


def test_tick_normalization(bsn_rules):
    scale = normalize_durations(bsn_rules)
    assert scale.tick_seconds == 60
    assert scale.deadlines == {("r1", 0): 5, ("r1", 1): 5, ("r2", 0): 2, ("r3", 0): 5}
    assert minimum_bound(bsn_rules) == 6


def test_tick_is_gcd_of_deadlines():
    spec = parse_sleec(HEADER + "rule_start a := when A then B within 90 seconds\n"
                                "b := when B then A within 2 minutes rule_end")
    scale = normalize_durations(spec)
    assert scale.tick_seconds == 30
    assert scale.max_deadline == 4


def test_no_deadlines_gives_unit_tick():
    spec = parse_sleec(HEADER + "rule_start a := when A then B rule_end")
    assert normalize_durations(spec).tick_seconds == 1
    assert minimum_bound(spec) == 1


def test_printer_uses_singular_for_one():
    (r,) = rules("r := when A then B within 1 minutes")
    assert "within 1 minute" in print_sleec(parse_sleec(HEADER + "rule_start r := when A then B "
                                                                  "within 1 minutes rule_end"))
    assert r.response.deadline.unit == "minutes"


def test_condition_printing_respects_precedence():
    c = And(Atom("x"), Not(And(Atom("x"), Compare("n", "<", 3))))
    assert format_condition(c) == "x and not (x and n < 3)"


@pytest.mark.parametrize("name", sorted(p.name for p in FIXTURES.glob("*.sleec")))
def test_fixture_round_trip(name):
    spec = parse_sleec(fixture_text(name))
    assert parse_sleec(print_sleec(spec)) == spec


@settings(max_examples=150, deadline=None)
@given(specs())
def test_random_round_trip(spec):
    assert parse_sleec(print_sleec(spec)) == spec
