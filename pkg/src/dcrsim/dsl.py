"""Textual authoring format for graphs.

Keyword-first syntax, one declaration per statement:

    graph loan {
      roles bank, client;
      event give_loan roles [bank];
      event fine roles [bank] excluded;
      include give_loan -> fine;
      condition give_loan -> fine delay P1M;
    }

Line comments start with `#`. Identifiers may contain hyphens, so write
subtraction with spaces (`a - b`); `a-b` is a single identifier. The words
`and`, `or`, `not`, `true`, `false` and `hash` are reserved. The serializer
is deterministic (declaration order preserved, role sets sorted) and its
output reparses to a structurally identical graph. Executed ages other than
zero are not expressible here; use the JSON form for arbitrary markings.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .durations import format_duration, looks_like_duration, parse_duration
from .errors import MalformedDurationError, ParseError
from .exprs import (
    INT_MAX,
    INT_MIN,
    UNDEFINED,
    Binary,
    Call,
    Expr,
    Lit,
    Ref,
    Unary,
    Value,
)
from .model import (
    INFINITY,
    Event,
    EventKind,
    Graph,
    Marking,
    Relation,
    RelationKind,
)

RESERVED_WORDS = frozenset({"and", "or", "not", "true", "false", "hash"})

_RELATION_KEYWORDS = {
    "condition": RelationKind.CONDITION,
    "response": RelationKind.RESPONSE,
    "milestone": RelationKind.MILESTONE,
    "include": RelationKind.INCLUDE,
    "exclude": RelationKind.EXCLUDE,
    "cancel": RelationKind.CANCEL,
    "value": RelationKind.VALUE,
}

# a hyphen stays in an identifier only when another identifier char follows,
# so `a->b` lexes as IDENT(a) ARROW IDENT(b)
_IDENT_RE = re.compile(r"[A-Za-z_](?:[A-Za-z0-9_.]|-(?=[A-Za-z0-9_.\-]))*")
_INT_RE = re.compile(r"\d+")

_PUNCT = {
    "->": "ARROW",
    "!=": "NE",
    "<=": "LE",
    ">=": "GE",
    "{": "LBRACE",
    "}": "RBRACE",
    "(": "LPAREN",
    ")": "RPAREN",
    "[": "LBRACKET",
    "]": "RBRACKET",
    ";": "SEMI",
    ",": "COMMA",
    "+": "PLUS",
    "-": "MINUS",
    "*": "STAR",
    "/": "SLASH",
    "=": "EQ",
    "<": "LT",
    ">": "GT",
}
_PUNCT_KEYS = sorted(_PUNCT, key=len, reverse=True)

_ESCAPES = {"\\": "\\", '"': '"', "n": "\n", "t": "\t"}


@dataclass(frozen=True)
class Token:
    kind: str  # IDENT | INT | STRING | punctuation kind | EOF
    value: str
    line: int
    column: int


def tokenize(text: str, file: str = "<input>") -> list[Token]:
    tokens: list[Token] = []
    pos = 0
    line = 1
    col = 1
    n = len(text)
    while pos < n:
        ch = text[pos]
        if ch == "\n":
            pos += 1
            line += 1
            col = 1
            continue
        if ch in " \t\r":
            pos += 1
            col += 1
            continue
        if ch == "#":
            while pos < n and text[pos] != "\n":
                pos += 1
            continue
        if ch == '"':
            tok, pos2 = _lex_string(text, pos, line, col, file)
            tokens.append(tok)
            col += pos2 - pos
            pos = pos2
            continue
        m = _IDENT_RE.match(text, pos)
        if m:
            tokens.append(Token("IDENT", m.group(), line, col))
            col += len(m.group())
            pos = m.end()
            continue
        m = _INT_RE.match(text, pos)
        if m:
            tokens.append(Token("INT", m.group(), line, col))
            col += len(m.group())
            pos = m.end()
            continue
        for punct in _PUNCT_KEYS:
            if text.startswith(punct, pos):
                tokens.append(Token(_PUNCT[punct], punct, line, col))
                col += len(punct)
                pos += len(punct)
                break
        else:
            raise ParseError(f"unexpected character {ch!r}", line, col, file=file)
    tokens.append(Token("EOF", "", line, col))
    return tokens


def _lex_string(text: str, pos: int, line: int, col: int, file: str) -> tuple[Token, int]:
    out = []
    i = pos + 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == '"':
            return Token("STRING", "".join(out), line, col), i + 1
        if ch == "\n":
            break
        if ch == "\\":
            if i + 1 >= n or text[i + 1] not in _ESCAPES:
                raise ParseError("invalid escape in string", line, col + (i - pos), file=file)
            out.append(_ESCAPES[text[i + 1]])
            i += 2
            continue
        out.append(ch)
        i += 1
    raise ParseError("unterminated string literal", line, col, file=file)


class _Parser:
    def __init__(self, tokens: list[Token], file: str):
        self.tokens = tokens
        self.pos = 0
        self.file = file

    # --- token plumbing ---

    def peek(self, offset: int = 0) -> Token:
        return self.tokens[min(self.pos + offset, len(self.tokens) - 1)]

    def advance(self) -> Token:
        tok = self.tokens[self.pos]
        if tok.kind != "EOF":
            self.pos += 1
        return tok

    def at_word(self, word: str) -> bool:
        tok = self.peek()
        return tok.kind == "IDENT" and tok.value == word

    def take_word(self, word: str) -> bool:
        if self.at_word(word):
            self.advance()
            return True
        return False

    def expect(self, kind: str, expected: str) -> Token:
        tok = self.peek()
        if tok.kind != kind:
            self.fail(f"expected {expected}", tok, (expected,))
        return self.advance()

    def expect_word(self, word: str) -> Token:
        tok = self.peek()
        if not self.at_word(word):
            self.fail(f"expected {word!r}", tok, (word,))
        return self.advance()

    def fail(self, message: str, tok: Token | None = None,
             expected: tuple[str, ...] = ()):
        tok = tok or self.peek()
        got = tok.value or tok.kind
        raise ParseError(f"{message}, got {got!r}", tok.line, tok.column,
                         expected, self.file)

    # --- grammar ---

    def parse_graph(self) -> Graph:
        self.expect_word("graph")
        name = self.ident("graph name")
        self.expect("LBRACE", "'{'")
        declared_roles: list[str] = []
        events: list[Event] = []
        seen: dict[str, Token] = {}
        relations: list[Relation] = []
        executed: dict[str, int] = {}
        required: dict[str, object] = {}
        excluded: set[str] = set()
        values: dict[str, Value] = {}

        while not self.peek().kind == "RBRACE":
            tok = self.peek()
            if tok.kind == "EOF":
                self.fail("expected declaration or '}'", tok, ("}",))
            if self.take_word("roles"):
                declared_roles.extend(self.role_list())
                self.expect("SEMI", "';'")
            elif self.take_word("event"):
                ev, flags = self.event_decl()
                if ev.id in seen:
                    self.fail(f"duplicate event id {ev.id!r}", tok)
                seen[ev.id] = tok
                events.append(ev)
                if flags.get("executed"):
                    executed[ev.id] = 0
                if "pending" in flags:
                    required[ev.id] = flags["pending"]
                if flags.get("excluded"):
                    excluded.add(ev.id)
                if "value" in flags:
                    values[ev.id] = flags["value"]
            elif tok.kind == "IDENT" and tok.value in _RELATION_KEYWORDS:
                relations.append(self.relation_decl())
            else:
                self.fail("expected 'roles', 'event', a relation keyword or '}'", tok)
        self.advance()  # RBRACE
        if self.peek().kind != "EOF":
            self.fail("trailing input after graph", self.peek())

        initial = Marking(
            executed=executed,
            required=required,
            included=frozenset(e.id for e in events if e.id not in excluded),
            values=values,
        )
        # deduplicate declared roles, keeping first occurrence
        roles = tuple(dict.fromkeys(declared_roles))
        return Graph(name, events, relations, initial, roles)

    def ident(self, what: str) -> str:
        tok = self.expect("IDENT", what)
        if tok.value in RESERVED_WORDS:
            raise ParseError(f"reserved word {tok.value!r} cannot be used as {what}",
                             tok.line, tok.column, file=self.file)
        return tok.value

    def role_list(self) -> list[str]:
        roles = [self.ident("role name")]
        while self.peek().kind == "COMMA":
            self.advance()
            roles.append(self.ident("role name"))
        return roles

    def event_decl(self) -> tuple[Event, dict]:
        event_id = self.ident("event id")
        action = event_id
        if self.peek().kind == "STRING":
            action = self.advance().value

        kind = EventKind.SIMPLE
        expr: Expr | None = None
        if self.take_word("input"):
            kind = EventKind.INPUT
        elif self.take_word("compute"):
            kind = EventKind.COMPUTE
            self.expect("LPAREN", "'('")
            expr = self.expression()
            self.expect("RPAREN", "')'")

        roles: frozenset[str] = frozenset()
        flags: dict = {}
        if self.take_word("roles"):
            self.expect("LBRACKET", "'['")
            roles = frozenset(self.role_list())
            self.expect("RBRACKET", "']'")
        if self.take_word("excluded"):
            flags["excluded"] = True
        if self.take_word("executed"):
            flags["executed"] = True
        if self.take_word("pending"):
            flags["pending"] = INFINITY
            if self._at_duration():
                flags["pending"] = self.duration()
        if self.take_word("value"):
            flags["value"] = self.literal()
        parent = None
        if self.take_word("in"):
            parent = self.ident("parent event id")
        self.expect("SEMI", "';'")
        return Event(event_id, action, roles, kind, expr, parent), flags

    def relation_decl(self) -> Relation:
        kind = _RELATION_KEYWORDS[self.advance().value]
        source = self.ident("source event id")
        self.expect("ARROW", "'->'")
        target = self.ident("target event id")
        delay = 0
        deadline = INFINITY
        guard: Expr | None = None
        if self.take_word("delay"):
            delay = self.duration()
        if self.take_word("deadline"):
            deadline = self.duration()
        if self.take_word("guard"):
            self.expect("LPAREN", "'('")
            guard = self.expression()
            self.expect("RPAREN", "')'")
        self.expect("SEMI", "';'")
        return Relation(kind, source, target, guard, delay, deadline)

    def _at_duration(self) -> bool:
        tok = self.peek()
        return tok.kind == "IDENT" and looks_like_duration(tok.value)

    def duration(self) -> int:
        tok = self.expect("IDENT", "ISO-8601 duration")
        try:
            return parse_duration(tok.value)
        except MalformedDurationError as exc:
            raise ParseError(str(exc), tok.line, tok.column, file=self.file) from None

    def literal(self) -> Value:
        tok = self.peek()
        if tok.kind == "STRING":
            return self.advance().value
        if tok.kind == "INT":
            return self.int_literal(False)
        if tok.kind == "MINUS":
            self.advance()
            return self.int_literal(True)
        if self.at_word("true"):
            self.advance()
            return True
        if self.at_word("false"):
            self.advance()
            return False
        self.fail("expected literal", tok, ("INT", "STRING", "true", "false"))

    def int_literal(self, negative: bool) -> int:
        tok = self.expect("INT", "integer")
        n = -int(tok.value) if negative else int(tok.value)
        if not INT_MIN <= n <= INT_MAX:
            raise ParseError("integer literal out of 64-bit range",
                             tok.line, tok.column, file=self.file)
        return n

    # --- expressions (precedence climbing) ---

    def expression(self) -> Expr:
        return self.or_expr()

    def or_expr(self) -> Expr:
        left = self.and_expr()
        while self.at_word("or"):
            self.advance()
            left = Binary("or", left, self.and_expr())
        return left

    def and_expr(self) -> Expr:
        left = self.not_expr()
        while self.at_word("and"):
            self.advance()
            left = Binary("and", left, self.not_expr())
        return left

    def not_expr(self) -> Expr:
        if self.at_word("not"):
            self.advance()
            return Unary("not", self.not_expr())
        return self.comparison()

    def comparison(self) -> Expr:
        left = self.additive()
        tok = self.peek()
        ops = {"EQ": "=", "NE": "!=", "LT": "<", "LE": "<=", "GT": ">", "GE": ">="}
        if tok.kind in ops:
            self.advance()
            return Binary(ops[tok.kind], left, self.additive())
        return left

    def additive(self) -> Expr:
        left = self.multiplicative()
        while self.peek().kind in ("PLUS", "MINUS"):
            op = "+" if self.advance().kind == "PLUS" else "-"
            left = Binary(op, left, self.multiplicative())
        return left

    def multiplicative(self) -> Expr:
        left = self.unary()
        while self.peek().kind in ("STAR", "SLASH"):
            op = "*" if self.advance().kind == "STAR" else "/"
            left = Binary(op, left, self.unary())
        return left

    def unary(self) -> Expr:
        if self.peek().kind == "MINUS":
            self.advance()
            if self.peek().kind == "INT":
                return Lit(self.int_literal(True))
            return Unary("neg", self.unary())
        return self.atom()

    def atom(self) -> Expr:
        tok = self.peek()
        if tok.kind == "INT":
            return Lit(self.int_literal(False))
        if tok.kind == "STRING":
            self.advance()
            return Lit(tok.value)
        if tok.kind == "LPAREN":
            self.advance()
            inner = self.expression()
            self.expect("RPAREN", "')'")
            return inner
        if tok.kind == "IDENT":
            if tok.value == "true":
                self.advance()
                return Lit(True)
            if tok.value == "false":
                self.advance()
                return Lit(False)
            if tok.value == "hash":
                self.advance()
                self.expect("LPAREN", "'('")
                args: list[Expr] = []
                if self.peek().kind != "RPAREN":
                    args.append(self.expression())
                    while self.peek().kind == "COMMA":
                        self.advance()
                        args.append(self.expression())
                self.expect("RPAREN", "')'")
                return Call("hash", tuple(args))
            if tok.value in RESERVED_WORDS:
                self.fail("reserved word in expression", tok)
            self.advance()
            return Ref(tok.value)
        self.fail("expected expression", tok)


def parse_graph(text: str, file: str = "<input>") -> Graph:
    """Parse DSL text; raises ParseError with a source position on bad input."""
    parser = _Parser(tokenize(text, file), file)
    return parser.parse_graph()


def parse_expression(text: str, file: str = "<expr>") -> Expr:
    parser = _Parser(tokenize(text, file), file)
    expr = parser.expression()
    if parser.peek().kind != "EOF":
        parser.fail("trailing input after expression")
    return expr


# --- serialization ----------------------------------------------------------

_PRECEDENCE = {"or": 1, "and": 2, "=": 4, "!=": 4, "<": 4, "<=": 4, ">": 4, ">=": 4,
               "+": 5, "-": 5, "*": 6, "/": 6}
_NON_ASSOC = {"=", "!=", "<", "<=", ">", ">="}


def format_expression(expr: Expr) -> str:
    """Canonical text form; reparsing it yields a structurally equal tree."""
    return _fmt(expr, 0)


def _fmt(expr: Expr, parent_level: int) -> str:
    if isinstance(expr, Lit):
        return _fmt_literal(expr.value)
    if isinstance(expr, Ref):
        return expr.event
    if isinstance(expr, Call):
        return f"{expr.name}({', '.join(_fmt(a, 0) for a in expr.args)})"
    if isinstance(expr, Unary):
        if expr.op == "not":
            text = f"not {_fmt(expr.operand, 3)}"
            level = 3
        else:
            operand = _fmt(expr.operand, 7)
            if isinstance(expr.operand, Lit) and isinstance(expr.operand.value, int) \
                    and not isinstance(expr.operand.value, bool):
                # keep the parser from folding -N into a negative literal
                operand = f"({operand})"
            text = f"-{operand}"
            level = 7
        return f"({text})" if level < parent_level else text
    level = _PRECEDENCE[expr.op]
    if expr.op in _NON_ASSOC:
        left = _fmt(expr.left, level + 1)
        right = _fmt(expr.right, level + 1)
    else:
        left = _fmt(expr.left, level)
        right = _fmt(expr.right, level + 1)
    text = f"{left} {expr.op} {right}"
    return f"({text})" if level < parent_level else text


def _fmt_literal(value: Value) -> str:
    if value is UNDEFINED:
        raise ValueError("undefined is not expressible as a literal")
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, int):
        return str(value)
    escaped = value.replace("\\", "\\\\").replace('"', '\\"')
    escaped = escaped.replace("\n", "\\n").replace("\t", "\\t")
    return f'"{escaped}"'


def serialize_graph(graph: Graph) -> str:
    """Deterministic DSL rendering; parse(serialize(g)) equals g structurally."""
    lines = [f"graph {graph.name} {{"]
    if graph.declared_roles:
        lines.append(f"  roles {', '.join(graph.declared_roles)};")
    initial = graph.initial
    for ev in graph.events.values():
        parts = [f"event {ev.id}"]
        if ev.action != ev.id:
            parts.append(_fmt_literal(ev.action))
        if ev.kind is EventKind.INPUT:
            parts.append("input")
        elif ev.kind is EventKind.COMPUTE:
            parts.append(f"compute ({format_expression(ev.expr)})")
        if ev.roles:
            parts.append(f"roles [{', '.join(sorted(ev.roles))}]")
        if ev.id not in initial.included:
            parts.append("excluded")
        if ev.id in initial.executed:
            age = initial.executed[ev.id]
            if age != 0:
                raise ValueError(
                    f"executed age {age} of {ev.id!r} is not expressible in the DSL"
                )
            parts.append("executed")
        if ev.id in initial.required:
            deadline = initial.required[ev.id]
            if deadline is INFINITY:
                parts.append("pending")
            else:
                parts.append(f"pending {format_duration(deadline)}")
        if ev.id in initial.values:
            parts.append(f"value {_fmt_literal(initial.values[ev.id])}")
        if ev.parent is not None:
            parts.append(f"in {ev.parent}")
        lines.append("  " + " ".join(parts) + ";")
    for rel in graph.relations:
        parts = [f"{rel.kind.value} {rel.source} -> {rel.target}"]
        if rel.delay:
            parts.append(f"delay {format_duration(rel.delay)}")
        if rel.deadline is not INFINITY:
            parts.append(f"deadline {format_duration(rel.deadline)}")
        if rel.guard is not None:
            parts.append(f"guard ({format_expression(rel.guard)})")
        lines.append("  " + " ".join(parts) + ";")
    lines.append("}")
    return "\n".join(lines) + "\n"
