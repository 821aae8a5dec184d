import json
import random
from pathlib import Path

import pytest

from conftest import fixture_text, load_model
from randspec import random_goal_model
from sleecgoal.errors import TranslationError
from sleecgoal.goals import parse_goal_model, validate_goal_model
from sleecgoal.lexer import tokenize
from sleecgoal.sleec import Polarity, check_names_and_types, parse_sleec
from sleecgoal.sleec.printer import format_duration, format_guard, format_purpose, format_rule
from sleecgoal.translate import (
    TraceabilityMap,
    fluent_decls,
    render_translation,
    translate_model,
)

TEMPLATES = [line for line in (Path(__file__).parent / "golden" / "task_templates.txt")
             .read_text(encoding="utf-8").splitlines() if line and not line.startswith("#")]


def tokens(text: str) -> list[str]:
    return [t.text for t in tokenize(text) if t.kind != "EOF"]


def instantiate(template: str, values: dict[str, str]) -> list[str]:
    for key, value in values.items():
        template = template.replace(f"<{key}>", value)
    return tokens(template)


def expected_rule_count(model) -> int:
    achieve = sum(g.type == "achieve" for g in model.goals)
    obstacles = sum(t.obstacle_event is not None for t in model.tasks)
    return achieve + 3 * len(model.tasks) + obstacles


def test_single_task_matches_templates():
    model = load_model("single_task.gsl")
    spec, _ = translate_model(model)
    task, goal = model.tasks[0], model.goals[0]
    values = {
        "n": "1", "k": "1", "Task": "DeliverParcel",
        "Event": goal.event, "Condition": format_guard(goal.condition),
        "ContextEvent": goal.context_event,
        "TriggeringEvent": task.triggering_event, "PreCond": format_guard(task.pre_cond),
        "TemporalConstraint": format_duration(task.temporal_constraint),
        "PostCond": format_guard(task.post_cond), "ObstacleEvent": task.obstacle_event,
    }
    assert len(spec.rules) == 4
    assert [tokens(format_rule(r)) for r in spec.rules] == [
        instantiate(t, values) for t in TEMPLATES[2:]
    ]
    (purpose,) = spec.purposes
    assert tokens(format_purpose(purpose)) == instantiate(TEMPLATES[0], values)


def test_achieve_goal_template():
    model = load_model("bsn.gsl")
    spec, _ = translate_model(model)
    g = model.goal("VitalSignsConsent")
    values = {"n": "1", "Event": g.event, "Condition": format_guard(g.condition),
              "ContextEvent": g.context_event}
    assert tokens(format_rule(spec.rule("P1"))) == instantiate(TEMPLATES[1], values)


def test_single_task_golden_file():
    assert render_translation(load_model("single_task.gsl")) == \
        fixture_text("single_task_translated.sleec")


@pytest.mark.parametrize("stem", ["bsn", "bsn_negotiated", "single_task"])
def test_golden_outputs(stem):
    model = load_model(f"{stem}.gsl")
    assert render_translation(model) == fixture_text(f"{stem}_translated.sleec")
    _, trace_map = translate_model(model)
    assert trace_map.to_json() == fixture_text(f"{stem}_translated.trace.json")


def test_bsn_rule_family():
    spec, _ = translate_model(load_model("bsn.gsl"))
    ids = {r.id for r in spec.rules}
    assert {"RuleT6_1", "RuleT6_2", "RuleT6_3", "RuleT6_Obstacle"} <= ids
    obstacle = spec.rule("RuleT6_Obstacle")
    assert obstacle.trigger_event == "PursuingTrackPatientOutdoors"
    assert obstacle.response.event == "PursuingApplyConsentPartialTrackingProtocol"
    assert obstacle.response.polarity is Polarity.FORBID
    assert check_names_and_types(spec) == []


def test_negotiation_removes_obstacle_and_adds_strategies():
    before, _ = translate_model(load_model("bsn.gsl"))
    after, _ = translate_model(load_model("bsn_negotiated.gsl"))
    assert "RuleT6_Obstacle" not in {r.id for r in after.rules}
    added = {r.id for r in after.rules} - {r.id for r in before.rules}
    assert added == {f"RuleT{k}_{s}" for k in (8, 9) for s in (1, 2, 3)}


def test_translation_reparses(fixtures_dir):
    for stem in ("bsn", "bsn_negotiated", "single_task"):
        model = load_model(f"{stem}.gsl")
        spec, _ = translate_model(model)
        assert parse_sleec(render_translation(model)) == spec


def test_fluent_header():
    (fluent,) = fluent_decls(load_model("single_task.gsl"))
    assert fluent.render() == ("fluent DeliverParcel = <{StartDeliverParcel}, "
                               "{AchievedDeliverParcel}> initially false")


def test_traceability_links_rules_to_attributes():
    _, trace_map = translate_model(load_model("bsn.gsl"))
    e = trace_map.lookup("RuleT6_Obstacle")
    assert (e.source, e.attribute, e.template) == (
        "ApplyConsentPartialTrackingProtocol", "obstacle_event", "Obstacle")
    assert (e.norm_principle, e.proxy) == ("Autonomy", "Assent/Consent")
    p1 = trace_map.lookup("P1")
    assert (p1.source, p1.template) == ("VitalSignsConsent", "P2")
    # tasks under the functional goal carry no value annotation
    assert trace_map.lookup("RuleT4_1").norm_principle is None
    ev = trace_map.lookup("PursuingTrackPatientOutdoors")
    assert (ev.source, ev.attribute) == ("TrackPatientOutdoors", "temporal_constraint")


def test_traceability_json_round_trip():
    _, trace_map = translate_model(load_model("bsn.gsl"))
    assert TraceabilityMap.from_json(trace_map.to_json()) == trace_map
    json.loads(trace_map.to_json())


def test_generated_name_collision():
    src = fixture_text("single_task.gsl").replace(
        "  event DoorBlocked\n", "  event DoorBlocked\n  event StartDeliverParcel\n")
    with pytest.raises(TranslationError) as err:
        translate_model(parse_goal_model(src))
    assert err.value.kind == "NameCollision"


def test_rule_count_formula_on_random_models():
    rng = random.Random(7)
    for _ in range(50):
        model = random_goal_model(rng)
        assert validate_goal_model(model) == []
        spec, _ = translate_model(model)
        assert len(spec.rules) == expected_rule_count(model)
        assert len(spec.purposes) == sum(g.type == "maintain" for g in model.goals)


def test_translation_is_deterministic():
    model = load_model("bsn.gsl")
    first = render_translation(model)
    assert all(render_translation(load_model("bsn.gsl")) == first for _ in range(3))
