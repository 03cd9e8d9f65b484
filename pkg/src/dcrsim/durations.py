"""ISO-8601 duration codec over discrete time steps (1 step = 1 second).

Calendar-free by design: the mapping is fixed so that models and traces are
deterministic regardless of wall-clock context. A month is 30 days, a year
365 days.
"""

from __future__ import annotations

import re

from .errors import MalformedDurationError

SECOND = 1
MINUTE = 60
HOUR = 3600
DAY = 86400
WEEK = 7 * DAY
MONTH = 30 * DAY
YEAR = 365 * DAY

# Subset: P[nY][nM][nW][nD][T[nH][nM][nS]]; M means months before T, minutes after.
_DURATION_RE = re.compile(
    r"^P(?:(\d+)Y)?(?:(\d+)M)?(?:(\d+)W)?(?:(\d+)D)?"
    r"(?:T(?:(\d+)H)?(?:(\d+)M)?(?:(\d+)S)?)?$"
)


def parse_duration(text: str) -> int:
    """Parse a duration token into a non-negative number of steps."""
    m = _DURATION_RE.match(text)
    if m is None:
        raise MalformedDurationError(text)
    if not any(m.groups()):
        # bare "P" or "PT" designate nothing
        raise MalformedDurationError(text, "no components")
    if text.endswith("T"):
        raise MalformedDurationError(text, "empty time part")
    years, months, weeks, days, hours, minutes, seconds = (
        int(g) if g else 0 for g in m.groups()
    )
    return (
        years * YEAR
        + months * MONTH
        + weeks * WEEK
        + days * DAY
        + hours * HOUR
        + minutes * MINUTE
        + seconds * SECOND
    )


def format_duration(steps: int) -> str:
    """Render steps using the largest exact units; inverse of parse_duration."""
    if steps < 0:
        raise ValueError(f"duration must be non-negative, got {steps}")
    if steps == 0:
        return "PT0S"
    parts = []
    rest = steps
    for unit, letter in ((YEAR, "Y"), (MONTH, "M"), (WEEK, "W"), (DAY, "D")):
        n, rest = divmod(rest, unit)
        if n:
            parts.append(f"{n}{letter}")
    time_parts = []
    for unit, letter in ((HOUR, "H"), (MINUTE, "M"), (SECOND, "S")):
        n, rest = divmod(rest, unit)
        if n:
            time_parts.append(f"{n}{letter}")
    out = "P" + "".join(parts)
    if time_parts:
        out += "T" + "".join(time_parts)
    return out


def looks_like_duration(token: str) -> bool:
    """Cheap syntactic test used by the DSL parser for attribute positions."""
    return token.startswith("P") and _DURATION_RE.match(token) is not None and any(
        ch.isdigit() for ch in token
    )
