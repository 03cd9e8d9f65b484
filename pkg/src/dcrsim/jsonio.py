"""Canonical JSON wire form for graphs and markings.

Keys are sorted, encoding is loss-free, and an infinite deadline is the JSON
string "inf". Expressions travel as their canonical DSL text. Decoding is
strict: unknown fields are schema violations, not silently dropped.
"""

from __future__ import annotations

import json
from typing import Any

from .errors import MalformedJsonError, ParseError, SchemaViolationError
from .exprs import INT_MAX, INT_MIN, Value
from .model import (
    INFINITY,
    Deadline,
    Event,
    EventKind,
    Graph,
    Marking,
    Relation,
    RelationKind,
)


def canonical_dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"), ensure_ascii=False)


# --- encoding ---------------------------------------------------------------

def marking_to_obj(marking: Marking) -> dict:
    return {
        "executed": {e: age for e, age in sorted(marking.executed.items())},
        "included": sorted(marking.included),
        "required": {
            e: _deadline_to_obj(dl) for e, dl in sorted(marking.required.items())
        },
        "values": {e: v for e, v in sorted(marking.values.items())},
    }


def graph_to_obj(graph: Graph) -> dict:
    from .dsl import format_expression

    events = []
    for ev in graph.events.values():
        obj: dict[str, Any] = {
            "id": ev.id,
            "action": ev.action,
            "roles": sorted(ev.roles),
            "kind": ev.kind.value,
        }
        if ev.expr is not None:
            obj["expr"] = format_expression(ev.expr)
        if ev.parent is not None:
            obj["parent"] = ev.parent
        events.append(obj)
    relations = []
    for rel in graph.relations:
        obj = {
            "kind": rel.kind.value,
            "source": rel.source,
            "target": rel.target,
        }
        if rel.guard is not None:
            obj["guard"] = format_expression(rel.guard)
        if rel.kind is RelationKind.CONDITION:
            obj["delay"] = rel.delay
        if rel.kind is RelationKind.RESPONSE:
            obj["deadline"] = _deadline_to_obj(rel.deadline)
        relations.append(obj)
    return {
        "name": graph.name,
        "roles": list(graph.declared_roles),
        "events": events,
        "relations": relations,
        "initial": marking_to_obj(graph.initial),
    }


def _deadline_to_obj(dl: Deadline) -> int | str:
    return "inf" if dl is INFINITY else dl


def marking_to_json(marking: Marking) -> str:
    return canonical_dumps(marking_to_obj(marking))


def graph_to_json(graph: Graph) -> str:
    return canonical_dumps(graph_to_obj(graph))


def to_json(obj: Graph | Marking) -> str:
    return graph_to_json(obj) if isinstance(obj, Graph) else marking_to_json(obj)


# --- decoding ---------------------------------------------------------------

def _loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise MalformedJsonError(str(exc)) from None


def _require_obj(value: Any, what: str, allowed: set[str], required: set[str]) -> dict:
    if not isinstance(value, dict):
        raise SchemaViolationError(f"{what} must be an object")
    unknown = set(value) - allowed
    if unknown:
        raise SchemaViolationError(f"unknown field(s) in {what}: {sorted(unknown)}")
    missing = required - set(value)
    if missing:
        raise SchemaViolationError(f"missing field(s) in {what}: {sorted(missing)}")
    return value


def _str(value: Any, what: str) -> str:
    if not isinstance(value, str):
        raise SchemaViolationError(f"{what} must be a string")
    return value


def _str_list(value: Any, what: str) -> list[str]:
    if not isinstance(value, list) or not all(isinstance(v, str) for v in value):
        raise SchemaViolationError(f"{what} must be a list of strings")
    return value


def _int(value: Any, what: str, minimum: int | None = 0) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise SchemaViolationError(f"{what} must be an integer")
    if minimum is not None and value < minimum:
        raise SchemaViolationError(f"{what} must be >= {minimum}")
    return value


def _value(value: Any, what: str) -> Value:
    if isinstance(value, bool) or isinstance(value, str):
        return value
    if isinstance(value, int):
        if not INT_MIN <= value <= INT_MAX:
            raise SchemaViolationError(f"{what} out of 64-bit range")
        return value
    raise SchemaViolationError(f"{what} must be an integer, boolean or string")


def _deadline_from_obj(value: Any, what: str) -> Deadline:
    if value == "inf":
        return INFINITY
    return _int(value, what)


def marking_from_obj(obj: Any) -> Marking:
    fields = {"executed", "included", "required", "values"}
    data = _require_obj(obj, "marking", fields, fields)
    executed = {}
    if not isinstance(data["executed"], dict):
        raise SchemaViolationError("executed must be an object")
    for e, age in data["executed"].items():
        executed[e] = _int(age, f"executed age of {e}")
    required = {}
    if not isinstance(data["required"], dict):
        raise SchemaViolationError("required must be an object")
    for e, dl in data["required"].items():
        required[e] = _deadline_from_obj(dl, f"deadline of {e}")
    values = {}
    if not isinstance(data["values"], dict):
        raise SchemaViolationError("values must be an object")
    for e, v in data["values"].items():
        values[e] = _value(v, f"value of {e}")
    included = frozenset(_str_list(data["included"], "included"))
    return Marking(executed=executed, required=required,
                   included=included, values=values)


def _expr_from_text(text: Any, what: str):
    from .dsl import parse_expression

    try:
        return parse_expression(_str(text, what))
    except ParseError as exc:
        raise SchemaViolationError(f"{what}: {exc}") from None


def _event_from_obj(obj: Any) -> Event:
    data = _require_obj(obj, "event", {"id", "action", "roles", "kind", "expr", "parent"},
                        {"id", "action", "roles", "kind"})
    kind_text = _str(data["kind"], "event kind")
    try:
        kind = EventKind(kind_text)
    except ValueError:
        raise SchemaViolationError(f"unknown event kind {kind_text!r}") from None
    expr = None
    if "expr" in data:
        if kind is not EventKind.COMPUTE:
            raise SchemaViolationError("expr is only valid on compute events")
        expr = _expr_from_text(data["expr"], "event expr")
    elif kind is EventKind.COMPUTE:
        raise SchemaViolationError("compute event requires expr")
    parent = _str(data["parent"], "parent") if "parent" in data else None
    return Event(
        id=_str(data["id"], "event id"),
        action=_str(data["action"], "event action"),
        roles=frozenset(_str_list(data["roles"], "event roles")),
        kind=kind,
        expr=expr,
        parent=parent,
    )


def _relation_from_obj(obj: Any) -> Relation:
    data = _require_obj(obj, "relation",
                        {"kind", "source", "target", "guard", "delay", "deadline"},
                        {"kind", "source", "target"})
    kind_text = _str(data["kind"], "relation kind")
    try:
        kind = RelationKind(kind_text)
    except ValueError:
        raise SchemaViolationError(f"unknown relation kind {kind_text!r}") from None
    if "delay" in data and kind is not RelationKind.CONDITION:
        raise SchemaViolationError("delay is only valid on condition relations")
    if "deadline" in data and kind is not RelationKind.RESPONSE:
        raise SchemaViolationError("deadline is only valid on response relations")
    guard = _expr_from_text(data["guard"], "relation guard") if "guard" in data else None
    return Relation(
        kind=kind,
        source=_str(data["source"], "relation source"),
        target=_str(data["target"], "relation target"),
        guard=guard,
        delay=_int(data["delay"], "delay") if "delay" in data else 0,
        deadline=(_deadline_from_obj(data["deadline"], "deadline")
                  if "deadline" in data else INFINITY),
    )


def graph_from_obj(obj: Any) -> Graph:
    fields = {"name", "roles", "events", "relations", "initial"}
    data = _require_obj(obj, "graph", fields, fields)
    if not isinstance(data["events"], list) or not isinstance(data["relations"], list):
        raise SchemaViolationError("events and relations must be lists")
    events = [_event_from_obj(e) for e in data["events"]]
    relations = [_relation_from_obj(r) for r in data["relations"]]
    initial = marking_from_obj(data["initial"])
    try:
        return Graph(
            name=_str(data["name"], "graph name"),
            events=events,
            relations=relations,
            initial=initial,
            declared_roles=tuple(_str_list(data["roles"], "roles")),
        )
    except ValueError as exc:
        raise SchemaViolationError(str(exc)) from None


def marking_from_json(text: str) -> Marking:
    return marking_from_obj(_loads(text))


def graph_from_json(text: str) -> Graph:
    return graph_from_obj(_loads(text))


def from_json(text: str) -> Graph | Marking:
    """Decode either a graph or a marking, discriminated by shape."""
    obj = _loads(text)
    if isinstance(obj, dict) and "events" in obj:
        return graph_from_obj(obj)
    return marking_from_obj(obj)
