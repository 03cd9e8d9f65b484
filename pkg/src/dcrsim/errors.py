"""Exception types shared across the package."""

from __future__ import annotations


class DcrError(Exception):
    """Base class for all engine, codec and replay errors."""


class UnknownEventError(DcrError):
    def __init__(self, event: str):
        super().__init__(f"unknown event {event!r}")
        self.event = event


class EvaluationError(DcrError):
    """A computation expression could not produce a value."""


class DivisionByZeroError(EvaluationError):
    def __init__(self):
        super().__init__("division by zero")


class NotEnabledError(DcrError):
    """Execution attempted on an event that fails an enabledness clause.

    `clause` is one of: role, included, condition, milestone, parent.
    """

    def __init__(self, event: str, clause: str, detail: str = ""):
        msg = f"event {event!r} is not enabled: {clause}"
        if detail:
            msg += f" ({detail})"
        super().__init__(msg)
        self.event = event
        self.clause = clause
        self.detail = detail


class MissingInputError(DcrError):
    def __init__(self, event: str):
        super().__init__(f"input event {event!r} executed without a value")
        self.event = event


class UnexpectedInputError(DcrError):
    def __init__(self, event: str):
        super().__init__(f"event {event!r} does not take an input value")
        self.event = event


class DeadlineViolationError(DcrError):
    """Time advancement would overshoot included required deadlines.

    `offenders` lists (event, remaining deadline in steps), earliest first.
    """

    def __init__(self, offenders: list[tuple[str, int]]):
        listing = ", ".join(f"{e} (deadline {d})" for e, d in offenders)
        super().__init__(f"time advance violates deadlines: {listing}")
        self.offenders = offenders


class MalformedDurationError(DcrError):
    def __init__(self, text: str, reason: str = ""):
        msg = f"malformed ISO-8601 duration {text!r}"
        if reason:
            msg += f": {reason}"
        super().__init__(msg)
        self.text = text


class ParseError(DcrError):
    """DSL syntax error with a 1-based source position."""

    def __init__(self, message: str, line: int, column: int,
                 expected: tuple[str, ...] = (), file: str = "<input>"):
        super().__init__(f"{file}:{line}:{column}: {message}")
        self.message = message
        self.line = line
        self.column = column
        self.expected = expected
        self.file = file


class MalformedJsonError(DcrError):
    pass


class SchemaViolationError(DcrError):
    pass


class MalformedLineError(DcrError):
    def __init__(self, line_no: int, reason: str):
        super().__init__(f"trace line {line_no}: {reason}")
        self.line_no = line_no
        self.reason = reason


class NonMonotonicTimeError(DcrError):
    def __init__(self, seq: int):
        super().__init__(f"trace entry seq {seq}: time goes backwards")
        self.seq = seq
