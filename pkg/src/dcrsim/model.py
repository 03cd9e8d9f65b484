"""Graph and marking data model.

A graph is immutable after construction and holds the declarative rules:
events (optionally nested under a parent event, forming sub-processes),
typed relations between them, role labels and the initial marking. A marking
is the run state: executed ages, required deadlines, the included set and
event values. Engine operations treat markings as values and return new ones.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from enum import Enum

from .errors import UnknownEventError
from .exprs import Expr, Value, referenced_events, static_check

EVENT_ID_RE = re.compile(r"^[A-Za-z_][A-Za-z0-9_.-]*$")


class _Infinity:
    """Non-fixed deadline: the event must eventually run, with no time bound."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "INFINITY"


INFINITY = _Infinity()

# A deadline is either a non-negative step count or INFINITY.
Deadline = int | _Infinity


class EventKind(Enum):
    INPUT = "input"
    COMPUTE = "compute"
    SIMPLE = "simple"


class RelationKind(Enum):
    CONDITION = "condition"
    RESPONSE = "response"
    MILESTONE = "milestone"
    INCLUDE = "include"
    EXCLUDE = "exclude"
    CANCEL = "cancel"
    VALUE = "value"


@dataclass(frozen=True)
class Event:
    id: str
    action: str
    roles: frozenset[str] = frozenset()
    kind: EventKind = EventKind.SIMPLE
    expr: Expr | None = None  # computation, present iff kind is COMPUTE
    parent: str | None = None


@dataclass(frozen=True)
class Relation:
    kind: RelationKind
    source: str
    target: str
    guard: Expr | None = None  # absent guard is constant true
    delay: int = 0  # conditions only
    deadline: Deadline = INFINITY  # responses only


@dataclass
class Marking:
    """Run state (executed ages, required deadlines, included set, values)."""

    executed: dict[str, int] = field(default_factory=dict)
    required: dict[str, Deadline] = field(default_factory=dict)
    included: frozenset[str] = frozenset()
    values: dict[str, Value] = field(default_factory=dict)

    def copy(self) -> "Marking":
        return Marking(
            executed=dict(self.executed),
            required=dict(self.required),
            included=self.included,
            values=dict(self.values),
        )


class Graph:
    """Immutable process model with per-target/per-source relation indices."""

    def __init__(self, name: str, events: list[Event] | tuple[Event, ...],
                 relations: list[Relation] | tuple[Relation, ...] = (),
                 initial: Marking | None = None,
                 declared_roles: tuple[str, ...] = ()):
        self.name = name
        self.events: dict[str, Event] = {}
        for ev in events:
            if ev.id in self.events:
                raise ValueError(f"duplicate event id {ev.id!r}")
            self.events[ev.id] = ev
        self.relations: tuple[Relation, ...] = tuple(relations)
        self.initial = initial if initial is not None else default_initial(self.events)
        self.declared_roles = tuple(declared_roles)

        self.conditions_to: dict[str, tuple[Relation, ...]] = {}
        self.milestones_to: dict[str, tuple[Relation, ...]] = {}
        self.outgoing: dict[str, tuple[Relation, ...]] = {}
        by_cond: dict[str, list[Relation]] = {}
        by_mile: dict[str, list[Relation]] = {}
        by_src: dict[str, list[Relation]] = {}
        for rel in self.relations:
            by_src.setdefault(rel.source, []).append(rel)
            if rel.kind is RelationKind.CONDITION:
                by_cond.setdefault(rel.target, []).append(rel)
            elif rel.kind is RelationKind.MILESTONE:
                by_mile.setdefault(rel.target, []).append(rel)
        self.conditions_to = {k: tuple(v) for k, v in by_cond.items()}
        self.milestones_to = {k: tuple(v) for k, v in by_mile.items()}
        self.outgoing = {k: tuple(v) for k, v in by_src.items()}

        children: dict[str, list[str]] = {}
        for ev in self.events.values():
            if ev.parent is not None:
                children.setdefault(ev.parent, []).append(ev.id)
        self.children: dict[str, tuple[str, ...]] = {
            k: tuple(v) for k, v in children.items()
        }
        self.descendants: dict[str, frozenset[str]] = {
            p: frozenset(self._collect_descendants(p)) for p in self.children
        }

    def _collect_descendants(self, parent: str) -> set[str]:
        out: set[str] = set()
        stack = list(self.children.get(parent, ()))
        while stack:
            e = stack.pop()
            if e in out:
                continue  # tolerate cyclic parents; validate reports them
            out.add(e)
            stack.extend(self.children.get(e, ()))
        return out

    def event(self, event_id: str) -> Event:
        try:
            return self.events[event_id]
        except KeyError:
            raise UnknownEventError(event_id) from None

    def role_universe(self) -> tuple[str, ...]:
        """Declared roles plus every role that appears on a label, sorted."""
        roles = set(self.declared_roles)
        for ev in self.events.values():
            roles.update(ev.roles)
        return tuple(sorted(roles))


def default_initial(events: dict[str, Event]) -> Marking:
    """All events included, none executed, required or valued."""
    return Marking(included=frozenset(events))


@dataclass(frozen=True)
class EffectReport:
    """What one execute call did, before include/exclude conflict resolution.

    `included`/`excluded` are the raw marks from fired relations; the
    returned marking reflects the resolution (include wins a same-step
    conflict). `completed_subprocesses` is innermost-first.
    """

    executed_event: str
    new_value: Value | None = None
    included: frozenset[str] = frozenset()
    excluded: frozenset[str] = frozenset()
    responses_set: dict[str, Deadline] = field(default_factory=dict)
    cancelled: frozenset[str] = frozenset()
    values_copied: dict[str, Value] = field(default_factory=dict)
    completed_subprocesses: tuple[str, ...] = ()


@dataclass(frozen=True)
class Finding:
    severity: str  # "error" | "warning"
    message: str
    subject: str = ""

    def __str__(self) -> str:
        where = f" [{self.subject}]" if self.subject else ""
        return f"{self.severity}: {self.message}{where}"


@dataclass
class ValidationReport:
    errors: list[Finding] = field(default_factory=list)
    warnings: list[Finding] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.errors

    def lines(self) -> list[str]:
        return [str(f) for f in self.errors + self.warnings]


_HARD_DIAG_PREFIXES = ("unknown event", "unknown function", "arity")


def validate(graph: Graph) -> ValidationReport:
    """Structural checks; an empty error list means all graph invariants hold.

    Warnings flag events that start excluded and can never be included.
    """
    report = ValidationReport()
    err = lambda msg, subject="": report.errors.append(Finding("error", msg, subject))
    warn = lambda msg, subject="": report.warnings.append(Finding("warning", msg, subject))

    for ev in graph.events.values():
        if not EVENT_ID_RE.match(ev.id):
            err(f"invalid event id {ev.id!r}", ev.id)
        for role in ev.roles:
            if not role:
                err("empty role name", ev.id)
        if (ev.expr is not None) != (ev.kind is EventKind.COMPUTE):
            err("computation expression present iff kind is compute", ev.id)
        if ev.parent is not None and ev.parent not in graph.events:
            err(f"unknown event {ev.parent!r} as parent", ev.id)

    # sub-process acyclicity: no event may be its own ancestor
    for ev in graph.events.values():
        seen = {ev.id}
        cur = ev.parent
        while cur is not None:
            if cur in seen:
                err(f"sub-process cycle through {cur!r}", ev.id)
                break
            seen.add(cur)
            cur = graph.events.get(cur).parent if cur in graph.events else None

    for i, rel in enumerate(graph.relations):
        subject = f"relation #{i + 1} {rel.kind.value} {rel.source} -> {rel.target}"
        for endpoint in (rel.source, rel.target):
            if endpoint not in graph.events:
                err(f"unknown event {endpoint!r}", subject)
        if rel.delay and rel.kind is not RelationKind.CONDITION:
            err("delay is only valid on condition relations", subject)
        if rel.delay < 0:
            err("delay must be non-negative", subject)
        if rel.deadline is not INFINITY:
            if rel.kind is not RelationKind.RESPONSE:
                err("deadline is only valid on response relations", subject)
            elif rel.deadline < 0:
                err("deadline must be non-negative", subject)
        if rel.guard is not None:
            _check_expr(graph, rel.guard, subject, err, warn)

    for ev in graph.events.values():
        if ev.expr is not None:
            _check_expr(graph, ev.expr, f"computation of {ev.id}", err, warn)

    m = graph.initial
    for key in (*m.executed, *m.required, *m.values):
        if key not in graph.events:
            err(f"unknown event {key!r} in initial marking", "initial marking")
    for e in m.included:
        if e not in graph.events:
            err(f"unknown event {e!r} in initial included set", "initial marking")
    for e, age in m.executed.items():
        if age < 0:
            err(f"negative executed age for {e}", "initial marking")
    for e, dl in m.required.items():
        if dl is not INFINITY and dl < 0:
            err(f"negative deadline for {e}", "initial marking")

    include_targets = {
        r.target for r in graph.relations if r.kind is RelationKind.INCLUDE
    }
    for ev in graph.events.values():
        if ev.id not in m.included and ev.id not in include_targets:
            warn("initially excluded and no include relation targets it", ev.id)

    return report


def _check_expr(graph: Graph, expr: Expr, subject, err, warn) -> None:
    for ref in sorted(referenced_events(expr)):
        if ref not in graph.events:
            err(f"unknown event {ref!r} referenced in expression", subject)
    for diag in static_check(expr, graph):
        if diag.startswith(_HARD_DIAG_PREFIXES):
            if not diag.startswith("unknown event"):  # already reported above
                err(diag, subject)
        else:
            warn(diag, subject)
