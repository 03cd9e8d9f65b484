"""Timed DCR graphs with data, roles and sub-processes.

Execution engine, textual DSL, JSON and DOT codecs, a catalog of smart
contract design pattern models, a trace conformance monitor, a CLI and an
HTTP simulation service.
"""

from .engine import (
    Enabledness,
    advance_time,
    enabled_events,
    enabledness,
    execute,
    is_accepting,
    is_enabled,
)
from .errors import (
    DcrError,
    DeadlineViolationError,
    DivisionByZeroError,
    EvaluationError,
    MalformedDurationError,
    MalformedJsonError,
    MalformedLineError,
    MissingInputError,
    NonMonotonicTimeError,
    NotEnabledError,
    ParseError,
    SchemaViolationError,
    UnexpectedInputError,
    UnknownEventError,
)
from .exprs import (
    UNDEFINED,
    Binary,
    Call,
    Expr,
    Lit,
    Ref,
    Unary,
    Value,
    eval_guard,
    evaluate,
    hash_value,
    static_check,
)
from .durations import format_duration, parse_duration
from .dot import export_dot
from .dsl import format_expression, parse_expression, parse_graph, serialize_graph
from .jsonio import (
    from_json,
    graph_from_json,
    graph_to_json,
    marking_from_json,
    marking_to_json,
    to_json,
)
from .model import (
    INFINITY,
    Deadline,
    EffectReport,
    Event,
    EventKind,
    Graph,
    Marking,
    Relation,
    RelationKind,
    ValidationReport,
    default_initial,
    validate,
)

__version__ = "0.1.0"
