"""Command-line front end: ``sleecgoal validate|translate|check|replay``.

Exit codes: 0 clean, 1 findings (diagnoses, or a non-compliant replay),
2 input errors, 3 file-system errors.
"""

from __future__ import annotations

import argparse
import hashlib
import json
import os
import sys
import time
from dataclasses import dataclass, field
from pathlib import Path

from sleecgoal.checker import CheckConfig, Diagnosis, check_spec
from sleecgoal.errors import BoundTooSmall, ParseError, TranslationError
from sleecgoal.goals import parse_goal_model, validate_goal_model
from sleecgoal.semantics import Status, Trace, activations, is_compliant, obligation_states
from sleecgoal.sleec import Polarity, SleecSpec, check_names_and_types, minimum_bound, parse_sleec
from sleecgoal.sleec.printer import format_condition, format_defeater, format_response
from sleecgoal.tracefile import TraceFormatError, load_trace
from sleecgoal.translate import TraceabilityMap, render_translation, translate_model

EXIT_OK, EXIT_FINDINGS, EXIT_INPUT, EXIT_IO = 0, 1, 2, 3
BOUND_ENV = "SLEEC_CHECK_BOUND"
SLACK_TICKS = 2


class InputError(Exception):
    """Bad input; ``lines`` are printed to stderr as-is."""

    def __init__(self, lines: list[str]):
        super().__init__("\n".join(lines))
        self.lines = lines


@dataclass
class RunReport:
    command: str
    inputs: list[tuple[str, str]] = field(default_factory=list)
    outcome: str = "clean"
    diagnoses: list[Diagnosis] = field(default_factory=list)
    elapsed: float | None = None
    extra: dict = field(default_factory=dict)

    def record(self, path: str, text: str) -> None:
        self.inputs.append((path, hashlib.sha256(text.encode("utf-8")).hexdigest()))

    def to_json(self) -> dict:
        out = {
            "command": self.command,
            "inputs": [{"path": p, "sha256": h} for p, h in self.inputs],
            "outcome": self.outcome,
            **self.extra,
            "diagnoses": [d.to_json() for d in self.diagnoses],
        }
        if self.elapsed is not None:
            out["elapsed_seconds"] = round(self.elapsed, 3)
        return out


# -- loading --------------------------------------------------------------------

def _read(path: str, report: RunReport | None = None) -> str:
    text = Path(path).read_text(encoding="utf-8")
    if report is not None:
        report.record(path, text)
    return text


def _located(path: str, line, col, message: str) -> str:
    return f"{path}:{line}:{col}: {message}" if line else f"{path}: {message}"


def load_spec(path: str, report: RunReport | None = None
              ) -> tuple[SleecSpec, TraceabilityMap | None]:
    """A checked spec from ``.sleec``, or the translation of a ``.gsl`` model."""
    text = _read(path, report)
    try:
        if path.endswith(".gsl"):
            model = parse_goal_model(text)
            _raise_validation(path, model)
            return translate_model(model)
        spec = parse_sleec(text)
    except ParseError as e:
        raise InputError([_located(path, e.line, e.col, e.message)]) from e
    except TranslationError as e:
        raise InputError([f"{path}: {e.kind}: {e}"]) from e
    errors = check_names_and_types(spec)
    if errors:
        raise InputError([_located(path, *(e.loc or (0, 0)), f"{e.kind}: {e.message}")
                          for e in errors])
    return spec, None


def _raise_validation(path: str, model) -> None:
    errors = validate_goal_model(model)
    if errors:
        raise InputError([_located(path, *(e.loc or (0, 0)), str(e)) for e in errors])


def default_bound(spec: SleecSpec) -> int:
    env = os.environ.get(BOUND_ENV)
    if env:
        try:
            value = int(env)
        except ValueError:
            raise InputError([f"{BOUND_ENV}={env!r} is not an integer"]) from None
        if value < 1:
            raise InputError([f"{BOUND_ENV} must be positive"])
        return value
    return minimum_bound(spec) + SLACK_TICKS


# -- commands ---------------------------------------------------------------------

def run_validate(args) -> int:
    failed = False
    for path in args.paths:
        try:
            text = _read(path)
            if path.endswith(".gsl"):
                _raise_validation(path, parse_goal_model(text))
            else:
                load_spec(path)
        except ParseError as e:
            _err(_located(path, e.line, e.col, e.message))
            failed = True
            continue
        except InputError as e:
            for line in e.lines:
                _err(line)
            failed = True
            continue
        print(f"{path}: ok")
    return EXIT_INPUT if failed else EXIT_OK


def run_translate(args) -> int:
    text = _read(args.model)
    try:
        model = parse_goal_model(text)
    except ParseError as e:
        raise InputError([_located(args.model, e.line, e.col, e.message)]) from e
    _raise_validation(args.model, model)
    try:
        sleec = render_translation(model)
        _, trace_map = translate_model(model)
    except TranslationError as e:
        raise InputError([f"{args.model}: {e.kind}: {e}"]) from e
    if args.output:
        Path(args.output).write_text(sleec, encoding="utf-8")
    else:
        sys.stdout.write(sleec)
    if args.trace_map:
        Path(args.trace_map).write_text(trace_map.to_json(), encoding="utf-8")
    return EXIT_OK


def run_check(args) -> int:
    report = RunReport("check")
    started = time.perf_counter()
    spec, trace_map = load_spec(args.spec, report)
    if args.trace_map:
        try:
            trace_map = TraceabilityMap.from_json(_read(args.trace_map, report))
        except (ValueError, KeyError, TypeError) as e:
            raise InputError([f"{args.trace_map}: malformed traceability map: {e}"]) from e
    bound = args.bound if args.bound is not None else default_bound(spec)
    try:
        cfg = CheckConfig(bound, args.max_simultaneous, not args.no_slice,
                          continuation_check=args.continuation)
        diagnoses = check_spec(spec, cfg, trace_map)
    except BoundTooSmall as e:
        raise InputError([f"{args.spec}: {e}"]) from e
    except ValueError as e:
        raise InputError([f"{args.spec}: {e}"]) from e
    report.diagnoses = diagnoses
    report.outcome = "findings" if diagnoses else "clean"
    report.extra = {"bound": bound, "max_events_per_tick": args.max_simultaneous,
                    "slicing": not args.no_slice}
    if args.timing:
        report.elapsed = time.perf_counter() - started
    if args.format == "json":
        sys.stdout.write(json.dumps(report.to_json(), indent=2, ensure_ascii=False) + "\n")
    else:
        sys.stdout.write(render_report(spec, report))
    if args.report:
        Path(args.report).write_text(json.dumps(report.to_json(), indent=2, ensure_ascii=False)
                                     + "\n", encoding="utf-8")
    return EXIT_FINDINGS if diagnoses else EXIT_OK


def run_replay(args) -> int:
    spec, _ = load_spec(args.spec)
    text = _read(args.trace)
    try:
        trace = load_trace(text, spec)
    except (TraceFormatError, json.JSONDecodeError) as e:
        raise InputError([f"{args.trace}: {e}"]) from e
    sys.stdout.write(render_replay(spec, trace))
    return EXIT_OK if is_compliant(spec, trace).compliant else EXIT_FINDINGS


# -- rendering ------------------------------------------------------------------------

def _value(v) -> str:
    return json.dumps(v) if isinstance(v, bool) else str(v)


def render_tick(i: int, tick) -> str:
    events = ", ".join(sorted(tick.events)) or "-"
    values = " ".join(f"{k}={_value(v)}" for k, v in tick.measures)
    return f"tick {i}: {events}" + (f"  [{values}]" if values else "")


def _rule_lines(spec: SleecSpec, rule_id: str, marked: dict[int, str]) -> list[str]:
    """Source text of a rule, one clause per line; ``marked`` maps clause index to a note."""
    rule = spec.rule(rule_id)
    head = f"{rule.id} := when {rule.trigger_event}"
    if rule.trigger_cond is not None:
        head += f" and {format_condition(rule.trigger_cond)}"
    clauses = [f"{head} then {format_response(rule.response)}"]
    clauses += ["    " + format_defeater(d) for d in rule.defeaters]
    out = []
    for i, text in enumerate(clauses):
        if i in marked:
            out.append(f"  >> {text}    <-- {marked[i]}")
        else:
            out.append(f"     {text}")
    return out


def render_diagnosis(spec: SleecSpec, d: Diagnosis) -> str:
    lines = [f"{d.kind} conflict: {', '.join(d.rules)}" if d.kind != "purpose_unsat"
             else f"purpose not satisfiable: {', '.join(d.rules)}"]
    marks: dict[str, dict[int, str]] = {}
    if d.clash is not None and d.witness is not None:
        clash = set(d.clash)
        for rec in activations(spec, d.witness):
            if rec.obligation in clash:
                marks.setdefault(rec.rule, {})[rec.matched_defeater or 0] = rec.obligation.describe()
    for rid in d.rules:
        if any(r.id == rid for r in spec.rules):
            lines += _rule_lines(spec, rid, marks.get(rid, {}))
        else:
            lines.append(f"     {rid} (purpose)")
    if d.witness is not None:
        lines.append("  witness:")
        lines += [f"    {render_tick(i, t)}" for i, t in enumerate(d.witness.ticks)]
    else:
        lines.append(f"  no witness up to bound {d.bound_used} (bounded verdict)")
    for entry in d.value_context:
        principle = entry.norm_principle or "-"
        proxy = entry.proxy or "-"
        lines.append(f"  value context: {entry.generated} from {entry.source}.{entry.attribute} "
                     f"(principle: {principle}, proxy: {proxy})")
    return "\n".join(lines) + "\n"


def render_report(spec: SleecSpec, report: RunReport) -> str:
    bound = report.extra.get("bound")
    if not report.diagnoses:
        return f"no conflicts found up to bound {bound}\n"
    parts = [render_diagnosis(spec, d) for d in report.diagnoses]
    parts.append(f"{len(report.diagnoses)} diagnosis(es) at bound {bound}\n")
    return "\n".join(parts)


def render_replay(spec: SleecSpec, trace: Trace) -> str:
    lines = [render_tick(i, t) for i, t in enumerate(trace.ticks)]
    for rec, state in obligation_states(spec, trace):
        where = f"{rec.rule} at tick {rec.tick}"
        if state is None:
            lines.append(f"{where}: cancelled by defeater {rec.matched_defeater}")
            continue
        ob = state.obligation
        lines.append(f"{where}: {ob.describe()}")
        if state.status is Status.DISCHARGED:
            lines.append(f"  {ob.event} discharged at tick {state.at}")
        elif state.status is Status.VIOLATED and ob.polarity is Polarity.REQUIRE:
            lines.append(f"  {ob.event} missed; window closed at tick {state.at}")
        elif state.status is Status.VIOLATED:
            lines.append(f"  {ob.event} occurred at tick {state.at} while forbidden")
        elif state.status is Status.PENDING:
            lines.append(f"  {ob.event} still pending at the end of the trace")
        else:
            lines.append(f"  {ob.event} respected")
    lines.append(f"verdict: {is_compliant(spec, trace).status}")
    return "\n".join(lines) + "\n"


# -- entry point --------------------------------------------------------------------

def _err(line: str) -> None:
    print(line, file=sys.stderr)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sleecgoal",
        description="Goal models to SLEEC rules, with bounded conflict checking.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse and check .sleec or .gsl files")
    p.add_argument("paths", nargs="+")
    p.set_defaults(func=run_validate)

    p = sub.add_parser("translate", help="compile a .gsl goal model to SLEEC")
    p.add_argument("model")
    p.add_argument("-o", "--output", help="write the .sleec here instead of stdout")
    p.add_argument("--trace-map", help="write the traceability map (JSON) here")
    p.set_defaults(func=run_translate)

    p = sub.add_parser("check", help="look for conflicts up to a bound")
    p.add_argument("spec", help=".sleec spec, or a .gsl model to translate first")
    p.add_argument("--bound", type=int,
                   help=f"trace length in ticks (default: 1 + max deadline + {SLACK_TICKS}, "
                        f"or ${BOUND_ENV})")
    p.add_argument("--max-simultaneous", type=int, default=3, metavar="K",
                   help="events allowed in one tick (default: 3)")
    p.add_argument("--no-slice", action="store_true", help="search the whole spec per rule")
    p.add_argument("--continuation", action="store_true",
                   help="also report prefixes with no compliant continuation (slow)")
    p.add_argument("--format", choices=("text", "json"), default="text")
    p.add_argument("--trace-map", help="traceability map for value context")
    p.add_argument("--report", help="also write the JSON run report here")
    p.add_argument("--timing", action="store_true", help="include elapsed time in the report")
    p.set_defaults(func=run_check)

    p = sub.add_parser("replay", help="run a trace through the rules")
    p.add_argument("spec")
    p.add_argument("trace", help="JSON trace file")
    p.set_defaults(func=run_replay)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except InputError as e:
        for line in e.lines:
            _err(line)
        return EXIT_INPUT
    except OSError as e:
        _err(f"error: {e.filename or ''}: {e.strerror or e}")
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
