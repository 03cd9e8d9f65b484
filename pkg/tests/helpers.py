"""Shared test helpers: a brute-force semantics oracle and random generators.

The oracle re-derives enabledness and execution effects directly from the
definition clauses by scanning the flat relation list every time, with no
indices and no shared code paths with the engine under test beyond the
expression evaluator and the data types.
"""

from __future__ import annotations

import random
import string

from dcrsim.exprs import UNDEFINED, eval_guard
from dcrsim.model import (
    INFINITY,
    Event,
    EventKind,
    Graph,
    Marking,
    Relation,
    RelationKind,
)

# --- brute-force oracle -------------------------------------------------------


def oracle_enabled(graph: Graph, marking: Marking, event: str, role: str) -> bool:
    ev = graph.events[event]
    if ev.roles and role not in ev.roles:
        return False
    if event not in marking.included:
        return False
    for rel in graph.relations:
        if rel.kind is RelationKind.CONDITION and rel.target == event:
            if rel.source in marking.included and eval_guard(rel.guard, marking):
                age = marking.executed.get(rel.source)
                if age is None or age < rel.delay:
                    return False
        if rel.kind is RelationKind.MILESTONE and rel.target == event:
            if rel.source in marking.included and eval_guard(rel.guard, marking):
                if rel.source in marking.required:
                    return False
    if ev.parent is not None:
        return oracle_enabled(graph, marking, ev.parent, role)
    return True


def oracle_enabled_set(graph: Graph, marking: Marking, role: str) -> set[str]:
    return {e for e in graph.events if oracle_enabled(graph, marking, e, role)}


def _contained_in(graph: Graph, parent: str, event: str) -> bool:
    cur = graph.events[event].parent
    while cur is not None:
        if cur == parent:
            return True
        cur = graph.events[cur].parent
    return False


def _oracle_apply_source(graph: Graph, executed, required, included, values,
                         source: str) -> None:
    executed[source] = 0
    required.pop(source, None)
    snapshot = Marking(executed=dict(executed), required=dict(required),
                       included=frozenset(included), values=dict(values))
    fired = [rel for rel in graph.relations
             if rel.source == source and eval_guard(rel.guard, snapshot)]
    for rel in fired:
        if rel.kind is RelationKind.VALUE:
            v = values.get(source, UNDEFINED)
            if v is UNDEFINED:
                values.pop(rel.target, None)
            else:
                values[rel.target] = v
    for rel in fired:
        if rel.kind is RelationKind.CANCEL:
            required.pop(rel.target, None)
    per_target = {}
    for rel in fired:
        if rel.kind is RelationKind.RESPONSE:
            old = per_target.get(rel.target)
            if old is None or old is INFINITY:
                per_target[rel.target] = rel.deadline
            elif rel.deadline is not INFINITY:
                per_target[rel.target] = min(old, rel.deadline)
    required.update(per_target)
    for rel in fired:
        if rel.kind is RelationKind.EXCLUDE:
            included.discard(rel.target)
    for rel in fired:
        if rel.kind is RelationKind.INCLUDE:
            included.add(rel.target)


def oracle_execute(graph: Graph, marking: Marking, event: str,
                   input_value=None) -> Marking:
    """Effect algorithm replayed literally; assumes the event is enabled."""
    ev = graph.events[event]
    executed = dict(marking.executed)
    required = dict(marking.required)
    included = set(marking.included)
    values = dict(marking.values)

    if ev.kind is EventKind.INPUT:
        values[event] = input_value
    elif ev.kind is EventKind.COMPUTE:
        from dcrsim.exprs import evaluate

        result = evaluate(ev.expr, marking)
        if result is UNDEFINED:
            values.pop(event, None)
        else:
            values[event] = result

    _oracle_apply_source(graph, executed, required, included, values, event)

    parent = ev.parent
    while parent is not None:
        busy = any(
            _contained_in(graph, parent, d) and d in included and d in required
            for d in graph.events
        )
        if busy:
            break
        _oracle_apply_source(graph, executed, required, included, values, parent)
        parent = graph.events[parent].parent

    return Marking(executed=executed, required=required,
                   included=frozenset(included), values=values)


def oracle_advance(marking: Marking, delta: int) -> Marking:
    return Marking(
        executed={e: a + delta for e, a in marking.executed.items()},
        required={e: d if d is INFINITY else max(0, d - delta)
                  for e, d in marking.required.items()},
        included=marking.included,
        values=dict(marking.values),
    )


def oracle_min_deadline(marking: Marking) -> int | None:
    finite = [d for e, d in marking.required.items()
              if e in marking.included and d is not INFINITY]
    return min(finite) if finite else None


# --- random generators --------------------------------------------------------

ROLE_POOL = ("admin", "user", "auditor")


def random_graph(rng: random.Random, max_events: int = 8,
                 max_relations: int = 16, with_data: bool = False) -> Graph:
    """Random valid graph; constant-true guards unless `with_data`."""
    n = rng.randint(1, max_events)
    ids = []
    for i in range(n):
        sep = rng.choice(["", "_", "-", "."])
        ids.append(f"ev{sep}{i}" if sep else f"ev{i}")
    events = []
    for i, event_id in enumerate(ids):
        roles = frozenset(r for r in ROLE_POOL if rng.random() < 0.25)
        parent = ids[rng.randrange(i)] if i and rng.random() < 0.3 else None
        kind = EventKind.SIMPLE
        expr = None
        if with_data and rng.random() < 0.3:
            if rng.random() < 0.5:
                kind = EventKind.INPUT
            else:
                kind = EventKind.COMPUTE
                expr = _random_expr(rng, ids)
        action = event_id if rng.random() < 0.8 else f"do {event_id}"
        events.append(Event(event_id, action, roles, kind, expr, parent))

    relations = []
    for _ in range(rng.randint(0, max_relations)):
        kind = rng.choice(list(RelationKind))
        source = rng.choice(ids)
        target = rng.choice(ids)
        guard = None
        if with_data and rng.random() < 0.3:
            guard = _random_expr(rng, ids)
        delay = rng.choice([0, 0, 1, 5, 3600]) if kind is RelationKind.CONDITION else 0
        deadline = INFINITY
        if kind is RelationKind.RESPONSE and rng.random() < 0.5:
            deadline = rng.choice([0, 1, 7, 86400])
        relations.append(Relation(kind, source, target, guard, delay, deadline))

    included = frozenset(e for e in ids if rng.random() < 0.8)
    executed = {e: 0 for e in ids if rng.random() < 0.25}
    required = {}
    for e in ids:
        if rng.random() < 0.2:
            required[e] = INFINITY if rng.random() < 0.5 else rng.choice([1, 10, 86400])
    values = {}
    if with_data:
        for ev in events:
            if rng.random() < 0.3:
                values[ev.id] = _random_value(rng)
    initial = Marking(executed=executed, required=required,
                      included=included, values=values)
    declared = tuple(r for r in ROLE_POOL if rng.random() < 0.3)
    name = "g_" + "".join(rng.choice(string.ascii_lowercase) for _ in range(5))
    return Graph(name, events, relations, initial, declared)


def _random_value(rng: random.Random):
    choice = rng.random()
    if choice < 0.5:
        return rng.randint(-100, 100)
    if choice < 0.75:
        return rng.random() < 0.5
    return rng.choice(["", "x", "heads", "tails", "p&q \"quoted\""])


def _random_expr(rng: random.Random, ids: list[str], depth: int = 0):
    from dcrsim.exprs import Binary, Call, Lit, Ref, Unary

    if depth >= 2 or rng.random() < 0.4:
        if rng.random() < 0.5:
            return Lit(_random_value(rng))
        return Ref(rng.choice(ids))
    pick = rng.random()
    if pick < 0.15:
        return Unary(rng.choice(["not", "neg"]), _random_expr(rng, ids, depth + 1))
    if pick < 0.25:
        return Call("hash", (_random_expr(rng, ids, depth + 1),))
    op = rng.choice(["+", "-", "*", "/", "=", "!=", "<", "<=", ">", ">=",
                     "and", "or"])
    return Binary(op, _random_expr(rng, ids, depth + 1),
                  _random_expr(rng, ids, depth + 1))


def random_input_value(rng: random.Random):
    return _random_value(rng)
