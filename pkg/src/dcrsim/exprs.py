"""Guard and computation expressions over event values.

The value domain is deliberately small: signed 64-bit integers, booleans,
UTF-8 text and an explicit "undefined" used for events that have not been
assigned a value yet. Undefined poisons arithmetic and comparisons but is
absorbed by short-circuiting `and`/`or`, so a guard over unset data simply
evaluates to not-true instead of crashing a simulation.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import TYPE_CHECKING, Container, Union

from .errors import DcrError, DivisionByZeroError, EvaluationError, UnknownEventError

if TYPE_CHECKING:  # pragma: no cover
    from .model import Graph, Marking


class _Undefined:
    """Singleton marker for an absent event value."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self) -> str:
        return "UNDEFINED"

    def __bool__(self) -> bool:
        return False


UNDEFINED = _Undefined()

# bool must be tested before int wherever it matters: bool is an int subclass.
Value = Union[int, bool, str, _Undefined]

INT_MIN = -(1 << 63)
INT_MAX = (1 << 63) - 1

_FNV_OFFSET = 14695981039346656037
_FNV_PRIME = 1099511628211


def is_defined(v: Value) -> bool:
    return v is not UNDEFINED


def check_int64(n: int, context: str = "integer") -> int:
    if not INT_MIN <= n <= INT_MAX:
        raise EvaluationError(f"{context} out of signed 64-bit range: {n}")
    return n


def fnv1a64(data: bytes) -> int:
    h = _FNV_OFFSET
    for b in data:
        h ^= b
        h = (h * _FNV_PRIME) & 0xFFFFFFFFFFFFFFFF
    return h


def hash_value(v: Value) -> Value:
    """Deterministic commitment stand-in: FNV-1a 64 over a tagged encoding."""
    if v is UNDEFINED:
        return UNDEFINED
    if isinstance(v, bool):
        data = b"B:true" if v else b"B:false"
    elif isinstance(v, int):
        data = b"I:" + str(v).encode("ascii")
    else:
        data = b"T:" + v.encode("utf-8")
    return format(fnv1a64(data), "016x")


# --- expression trees -------------------------------------------------------

UNARY_OPS = ("not", "neg")
BINARY_OPS = ("+", "-", "*", "/", "=", "!=", "<", "<=", ">", ">=", "and", "or")
CALL_NAMES = ("hash",)

_ARITH_OPS = ("+", "-", "*", "/")
_ORDER_OPS = ("<", "<=", ">", ">=")


@dataclass(frozen=True)
class Lit:
    value: Value


@dataclass(frozen=True)
class Ref:
    """The current value of another event, as recorded in the marking."""

    event: str


@dataclass(frozen=True)
class Unary:
    op: str  # "not" | "neg"
    operand: "Expr"


@dataclass(frozen=True)
class Binary:
    op: str
    left: "Expr"
    right: "Expr"


@dataclass(frozen=True)
class Call:
    name: str
    args: tuple["Expr", ...]


Expr = Union[Lit, Ref, Unary, Binary, Call]


def referenced_events(expr: Expr) -> set[str]:
    """All event ids the expression reads."""
    out: set[str] = set()
    stack: list[Expr] = [expr]
    while stack:
        node = stack.pop()
        if isinstance(node, Ref):
            out.add(node.event)
        elif isinstance(node, Unary):
            stack.append(node.operand)
        elif isinstance(node, Binary):
            stack.append(node.left)
            stack.append(node.right)
        elif isinstance(node, Call):
            stack.extend(node.args)
    return out


def evaluate(expr: Expr, marking: "Marking",
             known_events: Container[str] | None = None) -> Value:
    """Evaluate against a marking; reads event values, never mutates.

    Arithmetic is 64-bit checked; division truncates toward zero. Equality
    across different defined types is false, order comparison requires same
    type. Any undefined operand makes the result undefined except for
    `and`/`or`, which follow three-valued logic with a lazily evaluated
    right-hand side.

    A reference to an id outside `known_events` (the owning graph's events,
    when supplied) raises UnknownEventError.
    """
    if isinstance(expr, Lit):
        return expr.value
    if isinstance(expr, Ref):
        if known_events is not None and expr.event not in known_events:
            raise UnknownEventError(expr.event)
        return marking.values.get(expr.event, UNDEFINED)
    if isinstance(expr, Unary):
        if expr.op == "not":
            v = evaluate(expr.operand, marking, known_events)
            if isinstance(v, bool):
                return not v
            return UNDEFINED
        v = evaluate(expr.operand, marking, known_events)
        if isinstance(v, bool) or not isinstance(v, int):
            return UNDEFINED
        return check_int64(-v, "negation")
    if isinstance(expr, Call):
        if expr.name != "hash":
            raise EvaluationError(f"unknown function {expr.name!r}")
        if len(expr.args) != 1:
            raise EvaluationError("hash takes exactly one argument")
        return hash_value(evaluate(expr.args[0], marking, known_events))
    return _eval_binary(expr, marking, known_events)


def _eval_binary(expr: Binary, marking: "Marking",
                 known_events: Container[str] | None) -> Value:
    op = expr.op
    if op == "and":
        left = evaluate(expr.left, marking, known_events)
        if left is False:
            return False
        right = evaluate(expr.right, marking, known_events)
        if right is False:
            return False
        if left is True and right is True:
            return True
        return UNDEFINED
    if op == "or":
        left = evaluate(expr.left, marking, known_events)
        if left is True:
            return True
        right = evaluate(expr.right, marking, known_events)
        if right is True:
            return True
        if left is False and right is False:
            return False
        return UNDEFINED

    left = evaluate(expr.left, marking, known_events)
    right = evaluate(expr.right, marking, known_events)
    if left is UNDEFINED or right is UNDEFINED:
        return UNDEFINED

    if op in ("=", "!="):
        same_type = _type_tag(left) == _type_tag(right)
        equal = same_type and left == right
        return equal if op == "=" else not equal

    if op in _ORDER_OPS:
        if _type_tag(left) != _type_tag(right):
            return UNDEFINED
        if op == "<":
            return left < right
        if op == "<=":
            return left <= right
        if op == ">":
            return left > right
        return left >= right

    # arithmetic: two ints only
    if isinstance(left, bool) or isinstance(right, bool):
        return UNDEFINED
    if not isinstance(left, int) or not isinstance(right, int):
        return UNDEFINED
    if op == "+":
        return check_int64(left + right, "addition")
    if op == "-":
        return check_int64(left - right, "subtraction")
    if op == "*":
        return check_int64(left * right, "multiplication")
    if right == 0:
        raise DivisionByZeroError()
    # truncate toward zero, unlike Python's floor division
    q = abs(left) // abs(right)
    if (left < 0) != (right < 0):
        q = -q
    return check_int64(q, "division")


def _type_tag(v: Value) -> str:
    if isinstance(v, bool):
        return "bool"
    if isinstance(v, int):
        return "int"
    return "text"


def eval_guard(expr: Expr | None, marking: "Marking",
               known_events: Container[str] | None = None,
               diagnostics: list[str] | None = None) -> bool:
    """Total guard evaluation: absent guard is true, anything but a true
    boolean result counts as false. Errors never escape; they are recorded in
    `diagnostics` when a sink is given."""
    if expr is None:
        return True
    try:
        result = evaluate(expr, marking, known_events)
    except DcrError as exc:
        if diagnostics is not None:
            diagnostics.append(f"guard error: {exc}")
        return False
    if result is True:
        return True
    if diagnostics is not None and not isinstance(result, bool):
        kind = "undefined" if result is UNDEFINED else "non-boolean"
        diagnostics.append(f"guard evaluated to {kind} value, treated as false")
    return False


# --- static checks ----------------------------------------------------------

_BOOL = "bool"
_INT = "int"
_TEXT = "text"
_ANY = None  # not statically known


def static_check(expr: Expr, graph: "Graph") -> list[str]:
    """Flag unknown event references, wrong call arity and obvious type
    conflicts. Best effort: event references have unknown static type."""
    diags: list[str] = []
    _infer(expr, graph, diags)
    return diags


def _infer(expr: Expr, graph: "Graph", diags: list[str]) -> str | None:
    if isinstance(expr, Lit):
        if expr.value is UNDEFINED:
            return _ANY
        return _type_tag(expr.value)
    if isinstance(expr, Ref):
        if expr.event not in graph.events:
            diags.append(f"unknown event {expr.event!r}")
        return _ANY
    if isinstance(expr, Unary):
        t = _infer(expr.operand, graph, diags)
        if expr.op == "not":
            if t not in (_BOOL, _ANY):
                diags.append(f"'not' applied to {t} operand")
            return _BOOL
        if t not in (_INT, _ANY):
            diags.append(f"negation applied to {t} operand")
        return _INT
    if isinstance(expr, Call):
        if expr.name not in CALL_NAMES:
            diags.append(f"unknown function {expr.name!r}")
        if len(expr.args) != 1:
            diags.append(f"arity: hash takes 1 argument, got {len(expr.args)}")
        for arg in expr.args:
            _infer(arg, graph, diags)
        return _TEXT
    lt = _infer(expr.left, graph, diags)
    rt = _infer(expr.right, graph, diags)
    op = expr.op
    if op in ("and", "or"):
        for t in (lt, rt):
            if t not in (_BOOL, _ANY):
                diags.append(f"{op!r} applied to {t} operand")
        return _BOOL
    if op in _ARITH_OPS:
        for t in (lt, rt):
            if t not in (_INT, _ANY):
                diags.append(f"{op!r} applied to {t} operand")
        return _INT
    if op in _ORDER_OPS and lt is not _ANY and rt is not _ANY and lt != rt:
        diags.append(f"{op!r} comparing {lt} with {rt}")
    if op in ("=", "!=") and lt is not _ANY and rt is not _ANY and lt != rt:
        diags.append(f"{op!r} comparing {lt} with {rt} is constant")
    return _BOOL
