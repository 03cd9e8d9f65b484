"""Trace replay against a model, with optional automatic agents.

A trace is a sequence of timestamped actions observed elsewhere (for a smart
contract: its transactions). Replay advances model time between entries and
executes each action; the first entry the model does not permit produces a
violation verdict. Automatic agents stand in for machine roles: whenever
advancing time would overshoot a finite deadline, an agent whose role covers
the due event fires it at exactly the deadline instant.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

from .durations import parse_duration
from .engine import advance_time, enabledness, execute, is_accepting
from .errors import (
    DcrError,
    MalformedDurationError,
    MalformedLineError,
    MissingInputError,
    NonMonotonicTimeError,
)
from .exprs import INT_MAX, Value
from .jsonio import canonical_dumps
from .model import INFINITY, EventKind, Graph, Marking

_ENTRY_FIELDS = {"seq", "at", "role", "event", "value"}


@dataclass(frozen=True)
class TraceEntry:
    seq: int
    at: int  # absolute steps since trace start
    role: str
    event: str
    value: Value | None = None


@dataclass(frozen=True)
class AgentPolicy:
    """Fire included, required and enabled events of `role` exactly when
    their deadline hits, ordered by (deadline, event id). Input events are
    never fired: an agent cannot invent values."""

    role: str


@dataclass(frozen=True)
class Violation:
    seq: int
    reason: str  # NotEnabled | DeadlineMissed | MissingInput | UnknownEvent | RoleMismatch
    detail: str = ""


@dataclass(frozen=True)
class Verdict:
    status: str  # "Conformant" | "Violation"
    final_accepting: bool
    violation: Violation | None = None

    def to_obj(self) -> dict:
        obj: dict = {"status": self.status, "finalAccepting": self.final_accepting}
        if self.violation is not None:
            obj["violation"] = {
                "seq": self.violation.seq,
                "reason": self.violation.reason,
                "detail": self.violation.detail,
            }
        return obj

    def to_json(self) -> str:
        return canonical_dumps(self.to_obj())


@dataclass
class ReplayResult:
    verdict: Verdict
    marking: Marking
    steps_executed: int = 0
    agent_firings: list[tuple[int, str]] = field(default_factory=list)


def load_trace(text: str) -> list[TraceEntry]:
    """Parse JSON-lines trace text into validated, ordered entries.

    Each line is an object {"seq", "at", "role", "event", "value"?}; "at" is
    an integer step count or an ISO-8601 duration string offset. Blank lines
    are permitted.
    """
    entries: list[TraceEntry] = []
    last_seq = 0
    last_at = 0
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line:
            continue
        try:
            obj = json.loads(line)
        except json.JSONDecodeError as exc:
            raise MalformedLineError(line_no, f"invalid JSON: {exc}") from None
        if not isinstance(obj, dict):
            raise MalformedLineError(line_no, "entry must be an object")
        unknown = set(obj) - _ENTRY_FIELDS
        if unknown:
            raise MalformedLineError(line_no, f"unknown field(s): {sorted(unknown)}")
        missing = {"seq", "at", "role", "event"} - set(obj)
        if missing:
            raise MalformedLineError(line_no, f"missing field(s): {sorted(missing)}")
        seq = obj["seq"]
        if isinstance(seq, bool) or not isinstance(seq, int) or seq < 1:
            raise MalformedLineError(line_no, "seq must be a positive integer")
        at = _parse_at(obj["at"], line_no)
        role = obj["role"]
        event = obj["event"]
        if not isinstance(role, str) or not isinstance(event, str) or not event:
            raise MalformedLineError(line_no, "role and event must be strings")
        value = obj.get("value")
        if value is not None and not isinstance(value, (int, bool, str)):
            raise MalformedLineError(line_no, "value must be integer, boolean or string")
        if seq <= last_seq:
            raise MalformedLineError(line_no, "seq must be strictly increasing")
        if at < last_at:
            raise NonMonotonicTimeError(seq)
        entries.append(TraceEntry(seq, at, role, event, value))
        last_seq = seq
        last_at = at
    return entries


def _parse_at(at, line_no: int) -> int:
    if isinstance(at, bool):
        raise MalformedLineError(line_no, "at must be an integer or duration string")
    if isinstance(at, int):
        if not 0 <= at <= INT_MAX:
            raise MalformedLineError(line_no, "at out of range")
        return at
    if isinstance(at, str):
        try:
            return parse_duration(at)
        except MalformedDurationError as exc:
            raise MalformedLineError(line_no, str(exc)) from None
    raise MalformedLineError(line_no, "at must be an integer or duration string")


def replay_run(graph: Graph, trace: list[TraceEntry],
               agents: list[AgentPolicy] | tuple[AgentPolicy, ...] = ()) -> ReplayResult:
    """Replay with full result (final marking, agent firings) for tooling."""
    marking = graph.initial.copy()
    result = ReplayResult(Verdict("Conformant", True), marking)
    now = 0
    for entry in trace:
        marking, missed = _advance_with_agents(
            graph, marking, entry.at - now, agents, result, now
        )
        now = entry.at
        if missed is not None:
            result.verdict = Verdict(
                "Violation", is_accepting(graph, marking),
                Violation(entry.seq, "DeadlineMissed", missed),
            )
            result.marking = marking
            return result
        marking, violation = _execute_entry(graph, marking, entry)
        if violation is not None:
            result.verdict = Verdict("Violation", is_accepting(graph, marking), violation)
            result.marking = marking
            return result
        result.steps_executed += 1
    result.verdict = Verdict("Conformant", is_accepting(graph, marking))
    result.marking = marking
    return result


def replay(graph: Graph, trace: list[TraceEntry],
           agents: list[AgentPolicy] | tuple[AgentPolicy, ...] = ()) -> Verdict:
    """Check a trace against the model; total function, never raises."""
    return replay_run(graph, trace, agents).verdict


def _execute_entry(graph: Graph, marking: Marking,
                   entry: TraceEntry) -> tuple[Marking, Violation | None]:
    if entry.event not in graph.events:
        return marking, Violation(entry.seq, "UnknownEvent", entry.event)
    check = enabledness(graph, marking, entry.event, entry.role)
    if not check.enabled:
        if check.clause == "role":
            return marking, Violation(entry.seq, "RoleMismatch", check.detail)
        return marking, Violation(entry.seq, f"NotEnabled({check.clause})", check.detail)
    # values logged on non-input actions are ignored rather than rejected
    value = entry.value if graph.events[entry.event].kind is EventKind.INPUT else None
    try:
        new_marking, _ = execute(graph, marking, entry.event, entry.role, value)
    except MissingInputError:
        return marking, Violation(entry.seq, "MissingInput", entry.event)
    except DcrError as exc:  # pragma: no cover - defensive, enabledness ran first
        return marking, Violation(entry.seq, "NotEnabled(unknown)", str(exc))
    return new_marking, None


def _advance_with_agents(graph: Graph, marking: Marking, delta: int,
                         agents, result: ReplayResult,
                         now: int) -> tuple[Marking, str | None]:
    """Advance `delta` steps, letting agents fire events exactly at their
    deadlines. Returns (marking, failure detail or None); on failure the
    marking reflects the state at the missed deadline."""
    while delta > 0:
        due = [
            (dl, e) for e, dl in marking.required.items()
            if e in marking.included and dl is not INFINITY and dl < delta
        ]
        if not due:
            return advance_time(graph, marking, delta), None
        step = min(dl for dl, _ in due)
        marking = advance_time(graph, marking, step)
        delta -= step
        now += step
        # everything now at deadline 0 must fire before time can pass again;
        # the budget breaks models that keep re-arming zero deadlines forever
        budget = 16 * (len(graph.events) + 1)
        progressed = True
        while progressed:
            progressed = False
            stuck: str | None = None
            for event in sorted(
                e for e, dl in marking.required.items()
                if e in marking.included and dl == 0
            ):
                fired = False
                if graph.events[event].kind is not EventKind.INPUT and budget > 0:
                    for agent in agents:
                        if enabledness(graph, marking, event, agent.role).enabled:
                            marking, _ = execute(graph, marking, event, agent.role)
                            result.agent_firings.append((now, event))
                            budget -= 1
                            fired = True
                            progressed = True
                            break
                if not fired and stuck is None:
                    stuck = event
            if not progressed and stuck is not None:
                return marking, stuck
    return marking, None
