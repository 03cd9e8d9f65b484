"""Enabledness, event execution, time advancement and acceptance.

All operations are pure: they take a graph plus a marking and return fresh
markings, never mutating their inputs. A failed execute leaves no partial
state behind.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import (
    DeadlineViolationError,
    MissingInputError,
    NotEnabledError,
    UnexpectedInputError,
)
from .exprs import UNDEFINED, Value, eval_guard, evaluate
from .model import (
    INFINITY,
    Deadline,
    EffectReport,
    EventKind,
    Graph,
    Marking,
    RelationKind,
)


@dataclass(frozen=True)
class Enabledness:
    """Result of the four-clause enabledness check plus the role gate."""

    enabled: bool
    clause: str | None = None  # role | included | condition | milestone | parent
    detail: str = ""


def enabledness(graph: Graph, marking: Marking, event: str, role: str) -> Enabledness:
    """Why (or whether) `event` can be executed by `role` right now."""
    ev = graph.event(event)

    # role gate: an empty role set means anyone may execute the event
    if ev.roles and role not in ev.roles:
        return Enabledness(False, "role", f"requires one of {sorted(ev.roles)}")

    # (1) the event is included
    if event not in marking.included:
        return Enabledness(False, "included", "event is excluded")

    # (2) every applicable condition source was executed at least `delay` ago
    for rel in graph.conditions_to.get(event, ()):
        if rel.source not in marking.included:
            continue
        if not eval_guard(rel.guard, marking, graph.events):
            continue
        age = marking.executed.get(rel.source)
        if age is None or age < rel.delay:
            return Enabledness(
                False, "condition",
                f"condition from {rel.source!r} unmet (needs age >= {rel.delay})",
            )

    # (3) no applicable milestone source is pending
    for rel in graph.milestones_to.get(event, ()):
        if rel.source not in marking.included:
            continue
        if not eval_guard(rel.guard, marking, graph.events):
            continue
        if rel.source in marking.required:
            return Enabledness(
                False, "milestone", f"milestone source {rel.source!r} is pending"
            )

    # (4) the containing sub-process event, if any, is itself enabled
    if ev.parent is not None:
        parent_check = enabledness(graph, marking, ev.parent, role)
        if not parent_check.enabled:
            return Enabledness(
                False, "parent",
                f"sub-process {ev.parent!r} not enabled: {parent_check.clause}",
            )

    return Enabledness(True)


def is_enabled(graph: Graph, marking: Marking, event: str, role: str) -> bool:
    return enabledness(graph, marking, event, role).enabled


def enabled_events(graph: Graph, marking: Marking, role: str) -> set[str]:
    return {e for e in graph.events if enabledness(graph, marking, e, role).enabled}


class _WorkState:
    """Mutable scratch marking used inside one execute call."""

    def __init__(self, marking: Marking):
        self.executed = dict(marking.executed)
        self.required = dict(marking.required)
        self.included = set(marking.included)
        self.values = dict(marking.values)

    def freeze(self) -> Marking:
        return Marking(
            executed=self.executed,
            required=self.required,
            included=frozenset(self.included),
            values=self.values,
        )

    def as_marking(self) -> Marking:
        # guard evaluation view; effects must not mutate while a view is read
        return Marking(
            executed=self.executed,
            required=self.required,
            included=frozenset(self.included),
            values=self.values,
        )


class _Effects:
    """Accumulates raw effect marks across the event and completed parents."""

    def __init__(self):
        self.included: set[str] = set()
        self.excluded: set[str] = set()
        self.responses: dict[str, Deadline] = {}
        self.cancelled: set[str] = set()
        self.copied: dict[str, Value] = {}
        self.completed: list[str] = []


def execute(graph: Graph, marking: Marking, event: str, role: str,
            input_value: Value | None = None) -> tuple[Marking, EffectReport]:
    """Execute an enabled event and return the successor marking and a report.

    Effect order per executed source: own value and bookkeeping first, then
    guarded outgoing relations with guards read against that intermediate
    state, applied as value, cancel, response, and finally the included-set
    change with exclusions before inclusions (include wins a same-step
    conflict). Afterwards, containing sub-processes complete innermost-first
    while they have no included-and-pending events left.
    """
    ev = graph.event(event)
    check = enabledness(graph, marking, event, role)
    if not check.enabled:
        raise NotEnabledError(event, check.clause, check.detail)

    if ev.kind is EventKind.INPUT:
        if input_value is None or input_value is UNDEFINED:
            raise MissingInputError(event)
    elif input_value is not None:
        raise UnexpectedInputError(event)

    # (a) the event's new value, computed before anything changes
    if ev.kind is EventKind.INPUT:
        new_value: Value | None = input_value
    elif ev.kind is EventKind.COMPUTE:
        new_value = evaluate(ev.expr, marking, graph.events)
    else:
        new_value = None

    state = _WorkState(marking)
    effects = _Effects()

    if ev.kind is not EventKind.SIMPLE:
        _set_value(state, event, new_value)

    _run_event_effects(graph, state, event, effects)

    # (e) sub-process completion, innermost first, each ancestor at most once
    parent = ev.parent
    while parent is not None:
        pending = any(
            d in state.included and d in state.required
            for d in graph.descendants.get(parent, ())
        )
        if pending:
            break
        effects.completed.append(parent)
        _run_event_effects(graph, state, parent, effects)
        parent = graph.event(parent).parent

    report = EffectReport(
        executed_event=event,
        new_value=new_value if ev.kind is not EventKind.SIMPLE else None,
        included=frozenset(effects.included),
        excluded=frozenset(effects.excluded),
        responses_set=effects.responses,
        cancelled=frozenset(effects.cancelled),
        values_copied=effects.copied,
        completed_subprocesses=tuple(effects.completed),
    )
    return state.freeze(), report


def _set_value(state: _WorkState, event: str, value: Value | None) -> None:
    if value is None or value is UNDEFINED:
        state.values.pop(event, None)
    else:
        state.values[event] = value


def _run_event_effects(graph: Graph, state: _WorkState, source: str,
                       effects: _Effects) -> None:
    """Steps (b)-(d) for one executed source (the event or a completing parent)."""
    # (b)
    state.executed[source] = 0
    state.required.pop(source, None)

    # (c) snapshot guard outcomes against the post-(a,b) marking, then apply
    view = state.as_marking()
    fired = [
        rel for rel in graph.outgoing.get(source, ())
        if eval_guard(rel.guard, view, graph.events)
    ]

    for rel in fired:
        if rel.kind is RelationKind.VALUE:
            copied = state.values.get(source, UNDEFINED)
            _set_value(state, rel.target, copied)
            effects.copied[rel.target] = copied
    for rel in fired:
        if rel.kind is RelationKind.CANCEL:
            state.required.pop(rel.target, None)
            effects.cancelled.add(rel.target)
    responses: dict[str, Deadline] = {}
    for rel in fired:
        if rel.kind is RelationKind.RESPONSE:
            responses[rel.target] = _deadline_min(
                responses.get(rel.target), rel.deadline
            )
    for target, deadline in responses.items():
        state.required[target] = deadline
        effects.responses[target] = deadline

    # (d) exclusions then inclusions: include wins a same-step conflict
    excludes = {r.target for r in fired if r.kind is RelationKind.EXCLUDE}
    includes = {r.target for r in fired if r.kind is RelationKind.INCLUDE}
    state.included -= excludes
    state.included |= includes
    effects.excluded |= excludes
    effects.included |= includes


def _deadline_min(a: Deadline | None, b: Deadline) -> Deadline:
    if a is None or a is INFINITY:
        return b
    if b is INFINITY:
        return a
    return min(a, b)


def advance_time(graph: Graph, marking: Marking, delta: int) -> Marking:
    """Let `delta` steps pass: ages grow, finite deadlines shrink.

    Included events with a finite required deadline are a hard barrier:
    overshooting any of them raises DeadlineViolationError listing all
    offenders. Excluded events' deadlines never block but still decrease,
    floored at zero.
    """
    if delta < 0:
        raise ValueError(f"delta must be non-negative, got {delta}")
    offenders = sorted(
        (dl, e)
        for e, dl in marking.required.items()
        if e in marking.included and dl is not INFINITY and delta > dl
    )
    if offenders:
        raise DeadlineViolationError([(e, dl) for dl, e in offenders])
    return Marking(
        executed={e: age + delta for e, age in marking.executed.items()},
        required={
            e: dl if dl is INFINITY else max(0, dl - delta)
            for e, dl in marking.required.items()
        },
        included=marking.included,
        values=dict(marking.values),
    )


def is_accepting(graph: Graph, marking: Marking) -> bool:
    """No included event still has a pending execution requirement."""
    return not any(e in marking.included for e in marking.required)
