from pathlib import Path

import pytest

import sleecgoal
from sleecgoal.goals import parse_goal_model
from sleecgoal.sleec import parse_sleec

FIXTURES = Path(sleecgoal.__file__).parent / "fixtures"


def fixture_text(name: str) -> str:
    return (FIXTURES / name).read_text(encoding="utf-8")


def load_sleec(name: str):
    return parse_sleec(fixture_text(name))


def load_model(name: str):
    return parse_goal_model(fixture_text(name))


@pytest.fixture
def bsn_rules():
    return load_sleec("bsn_fixed.sleec")


@pytest.fixture
def fixtures_dir() -> Path:
    return FIXTURES
