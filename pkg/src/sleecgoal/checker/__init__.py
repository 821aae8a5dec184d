"""Bounded conflict and purpose checking with an exhaustive oracle."""

from sleecgoal.checker.check import check_spec
from sleecgoal.checker.config import CheckConfig
from sleecgoal.checker.diagnosis import PURPOSE_UNSAT, SITUATIONAL, VACUOUS, Diagnosis
from sleecgoal.checker.domains import abstract_measure_domains
from sleecgoal.checker.oracle import enumerate_all_traces, oracle_verdicts
from sleecgoal.checker.search import (
    check_purpose,
    clashing_pair,
    find_dead_end,
    find_situational_conflict,
    find_trigger_witness,
)
from sleecgoal.checker.slicing import slice_relevant_rules

__all__ = [
    "CheckConfig", "Diagnosis", "PURPOSE_UNSAT", "SITUATIONAL", "VACUOUS",
    "abstract_measure_domains", "check_purpose", "check_spec", "clashing_pair",
    "enumerate_all_traces", "find_dead_end", "find_situational_conflict",
    "find_trigger_witness", "oracle_verdicts", "slice_relevant_rules",
]
