import pytest
from hypothesis import given, settings

from conftest import fixture_text, load_model
from sleecgoal.errors import MissingAttribute, ParseError
from sleecgoal.goals import parse_goal_model, print_goal_model, validate_goal_model
from sleecgoal.sleec import And, Atom, Duration
from strategies import goal_models

VOCAB = """system S
vocabulary
  event Go
  event Done
  measure ready: boolean
end
"""

TASK = """task T1
  def: "do it"
  triggering_event: Go
  temporal_constraint: 2 minutes
  post_cond: ready
end
"""


def goal(kind="functional", extra="", type_="achieve"):
    return f"""{kind} goal G1
  type: {type_}
{extra}  condition: ready
  event: Done
  context_event: Go
  def: "goal"
end
"""


def kinds(source):
    return sorted({e.kind for e in validate_goal_model(parse_goal_model(source))})


def test_consent_goal_attributes():
    model = load_model("bsn.gsl")
    g = model.goal("VitalSignsConsent")
    assert g.kind == "normative" and g.type == "achieve"
    assert g.condition == And(Atom("purposeProtocolInformed"), Atom("patientConsentsFullTracking"))
    assert g.event == "AchievedObtainConsentFullTracking"
    assert g.context_event == "MeetingUser"
    assert g.normative.classes == ("Ethical", "Legal", "Social")
    assert g.normative.norm_principle == "Autonomy"
    assert g.normative.proxy == "Assent/Consent"
    assert g.formal_def.startswith("∀ s ∈ Sensors")


def test_fixture_models_validate():
    for name in ("bsn.gsl", "bsn_negotiated.gsl", "single_task.gsl"):
        assert validate_goal_model(load_model(name)) == [], name


def test_task_order_puts_partial_tracking_sixth():
    model = load_model("bsn.gsl")
    assert model.tasks[5].id == "ApplyConsentPartialTrackingProtocol"
    assert model.tasks[5].obstacle_event == "PursuingTrackPatientOutdoors"
    assert model.tasks[5].temporal_constraint == Duration(1, "minutes")


def test_missing_required_attribute():
    src = VOCAB + goal() + TASK.replace("  post_cond: ready\n", "") + "refine G1 AND T1\n"
    with pytest.raises(MissingAttribute) as err:
        parse_goal_model(src)
    assert err.value.attribute == "post_cond"
    assert err.value.owner == "task T1"


def test_normative_attribute_on_functional_goal_rejected():
    with pytest.raises(ParseError, match="only allowed on normative"):
        parse_goal_model(VOCAB + goal(extra='  proxy: "Consent"\n'))


def test_unknown_class_rejected():
    with pytest.raises(ParseError, match="not one of"):
        parse_goal_model(VOCAB + goal("normative", extra="  class: Moral\n"))


def test_normative_goal_needs_all_value_attributes():
    src = VOCAB + goal("normative", extra='  class: Legal\n') + TASK + "refine G1 AND T1\n"
    assert kinds(src) == ["MissingNormativeAttrs"]


def test_clean_model():
    assert kinds(VOCAB + goal() + TASK + "refine G1 AND T1\n") == []


def test_unrefined_goal():
    assert kinds(VOCAB + goal() + TASK.replace("T1", "T2")) == ["OrphanTask", "UnrefinedGoal"]


def test_goal_leaf_under_parent():
    src = (VOCAB + goal() + goal().replace("G1", "G2") + TASK
           + "refine G1 AND T1, G2\n")
    assert kinds(src) == ["NonTaskLeaf"]


def test_cycle_detected():
    src = (VOCAB + goal() + goal().replace("G1", "G2") + TASK
           + "refine G1 AND G2, T1\nrefine G2 OR G1\n")
    assert "CyclicRefinement" in kinds(src)


def test_undeclared_event_reference():
    src = VOCAB + goal().replace("event: Done", "event: Finished") + TASK + "refine G1 AND T1\n"
    assert kinds(src) == ["UndeclaredIdentifier"]


def test_lifecycle_events_are_in_scope():
    src = VOCAB + goal().replace("event: Done", "event: AchievedT1") + TASK + "refine G1 AND T1\n"
    assert kinds(src) == []


def test_sort_mismatch_in_condition():
    src = VOCAB + goal().replace("condition: ready", "condition: ready > 3") + TASK + "refine G1 AND T1\n"
    assert kinds(src) == ["SortMismatch"]


def test_refinement_needs_mode():
    with pytest.raises(ParseError):
        parse_goal_model(VOCAB + goal() + TASK + "refine G1 T1\n")


@pytest.mark.parametrize("name", ["bsn.gsl", "bsn_negotiated.gsl", "single_task.gsl"])
def test_fixture_round_trip(name):
    model = parse_goal_model(fixture_text(name))
    assert parse_goal_model(print_goal_model(model)) == model


@settings(max_examples=100, deadline=None)
@given(goal_models())
def test_random_round_trip(model):
    text = print_goal_model(model)
    assert parse_goal_model(text) == model
    assert print_goal_model(parse_goal_model(text)) == text
