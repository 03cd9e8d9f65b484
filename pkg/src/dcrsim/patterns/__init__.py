"""Catalog of smart-contract design pattern models plus the casino case study.

Four patterns with interesting machinery (commit-and-reveal, time
incentivization, rate limitation, circuit breaker) and the casino model are
built programmatically; the remaining catalog entries ship as `.dcr` fixture
files under `fixtures/`. Scenario traces live under `traces/` as JSON lines
compatible with the conformance monitor.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from importlib import resources
from typing import Callable

from ..durations import DAY, MONTH
from ..dsl import parse_expression, parse_graph
from ..model import (
    INFINITY,
    Event,
    EventKind,
    Graph,
    Marking,
    Relation,
    RelationKind,
)

_COND = RelationKind.CONDITION
_RESP = RelationKind.RESPONSE
_MILE = RelationKind.MILESTONE
_INCL = RelationKind.INCLUDE
_EXCL = RelationKind.EXCLUDE
_CANC = RelationKind.CANCEL
_VALU = RelationKind.VALUE


@dataclass(frozen=True)
class PatternDescriptor:
    """One catalog entry: a named, parameterized graph constructor."""

    name: str
    build: Callable[..., Graph]
    citation: str
    parameters: dict[str, object] = field(default_factory=dict)


def build_commit_and_reveal() -> Graph:
    """Two-phase secret submission: commit a digest, later reveal the
    preimage; a computation event decides the outcome.

    The outcome branches are driven by guard-symmetric include/exclude pairs
    (`decide` vs `not decide`), so exactly one of fail/pass ends up included
    and the include-wins conflict rule is never triggered.
    """
    decide_expr = parse_expression("commit = hash(reveal)")
    events = [
        Event("commit", "commit", kind=EventKind.INPUT),
        Event("reveal", "reveal", kind=EventKind.INPUT),
        Event("decide", "decide", kind=EventKind.COMPUTE, expr=decide_expr),
        Event("fail", "fail"),
        Event("pass", "pass"),
    ]
    guard_true = parse_expression("decide")
    guard_false = parse_expression("not decide")
    relations = [
        Relation(_COND, "commit", "reveal"),
        Relation(_RESP, "commit", "reveal"),
        Relation(_COND, "reveal", "decide"),
        Relation(_RESP, "reveal", "decide"),
        Relation(_MILE, "reveal", "commit"),
        Relation(_MILE, "decide", "commit"),
        Relation(_MILE, "fail", "commit"),
        Relation(_MILE, "pass", "commit"),
        Relation(_INCL, "decide", "pass", guard=guard_true),
        Relation(_INCL, "decide", "fail", guard=guard_false),
        Relation(_EXCL, "decide", "fail", guard=guard_true),
        Relation(_EXCL, "decide", "pass", guard=guard_false),
    ]
    initial = Marking(included=frozenset({"commit", "reveal", "decide"}))
    return Graph("commit_and_reveal", events, relations, initial)


def build_time_incentivization() -> Graph:
    """A party is punishable one month after a triggering action unless it
    acts in the meantime: delayed condition plus defeasible exclude."""
    events = [
        Event("give_loan", "give loan", roles=frozenset({"bank"})),
        Event("pay_loan", "pay loan", roles=frozenset({"client"})),
        Event("fine", "fine", roles=frozenset({"bank"})),
    ]
    relations = [
        Relation(_INCL, "give_loan", "pay_loan"),
        Relation(_INCL, "give_loan", "fine"),
        Relation(_COND, "give_loan", "fine", delay=MONTH),
        Relation(_EXCL, "pay_loan", "fine"),
    ]
    initial = Marking(included=frozenset({"give_loan"}))
    return Graph("time_incentivization", events, relations, initial,
                 declared_roles=("bank", "client"))


def build_rate_limitation(limit: int = 100, period: int = DAY) -> Graph:
    """Cap the total withdrawn per period.

    Encoding of the accumulator: `withdraw` makes the computation event
    `rate_limiter` due immediately (response with deadline PT0S); executing
    it (normally via an automatic system agent) adds the last withdrawal to
    its own running total, and a permanent self-response keeps it pending so
    the guarded milestone `rate_limiter >= set_limit` blocks `withdraw`
    whenever the total has reached the limit. `new_period` runs on a fixed
    cycle (self condition and self response of one period) and copies value
    0 into the accumulator through a value relation.
    """
    if limit <= 0:
        raise ValueError(f"limit must be positive, got {limit}")
    if period <= 0:
        raise ValueError(f"period must be positive, got {period}")
    accumulate = parse_expression("rate_limiter + withdraw")
    over_limit = parse_expression("rate_limiter >= set_limit")
    events = [
        Event("set_limit", "set limit", roles=frozenset({"admin"}),
              kind=EventKind.INPUT),
        Event("new_period", "new period", roles=frozenset({"system"})),
        Event("rate_limiter", "rate limiter", roles=frozenset({"system"}),
              kind=EventKind.COMPUTE, expr=accumulate),
        Event("withdraw", "withdraw", roles=frozenset({"user"}),
              kind=EventKind.INPUT),
    ]
    relations = [
        Relation(_COND, "new_period", "new_period", delay=period),
        Relation(_RESP, "new_period", "new_period", deadline=period),
        Relation(_VALU, "new_period", "rate_limiter"),
        Relation(_COND, "set_limit", "withdraw"),
        Relation(_COND, "withdraw", "rate_limiter"),
        Relation(_RESP, "withdraw", "rate_limiter", deadline=0),
        Relation(_RESP, "rate_limiter", "rate_limiter"),
        Relation(_MILE, "rate_limiter", "withdraw", guard=over_limit),
    ]
    initial = Marking(
        executed={"new_period": 0},
        required={"new_period": period, "rate_limiter": INFINITY},
        included=frozenset(e.id for e in events),
        values={"set_limit": limit, "new_period": 0, "rate_limiter": 0},
    )
    return Graph("rate_limitation", events, relations, initial,
                 declared_roles=("admin", "system", "user"))


def build_circuit_breaker() -> Graph:
    """Emergency stop: panic makes the breaker group pending, and milestones
    from it freeze normal trading until the group completes via revive (or
    contingency, which additionally opens the escape hatch)."""
    user = frozenset({"user"})
    admin = frozenset({"admin"})
    events = [
        Event("buy", "buy", roles=user),
        Event("sell", "sell", roles=user),
        Event("transfer", "transfer", roles=user),
        Event("panic", "panic", roles=frozenset({"monitor"})),
        Event("circuit_breaker", "circuit breaker"),
        Event("revive", "revive", roles=admin, parent="circuit_breaker"),
        Event("contingency", "contingency", roles=admin, parent="circuit_breaker"),
        Event("escape_hatch", "escape hatch", roles=admin),
    ]
    relations = [
        Relation(_RESP, "panic", "circuit_breaker"),
        Relation(_MILE, "circuit_breaker", "buy"),
        Relation(_MILE, "circuit_breaker", "sell"),
        Relation(_MILE, "circuit_breaker", "transfer"),
        Relation(_MILE, "circuit_breaker", "panic"),
        Relation(_INCL, "contingency", "escape_hatch"),
    ]
    initial = Marking(included=frozenset(e.id for e in events) - {"escape_hatch"})
    return Graph("circuit_breaker", events, relations, initial,
                 declared_roles=("user", "monitor", "admin"))


def build_casino() -> Graph:
    """Coin-guessing casino: one sub-process holding all activities, staged
    by include/exclude arrows instead of explicit contract states.

    The operator's commitment lives in createGame's value. decideBet is the
    reveal step; its computation compares the commitment against the hash of
    its own current value, the slot where a revealed secret would be
    recorded. The shipped traces drive the game purely through action
    ordering, so the comparison result does not gate any relation here.
    """
    op = frozenset({"operator"})
    decide_expr = parse_expression("createGame = hash(decideBet)")
    events = [
        Event("casino", "casino"),
        Event("createGame", "createGame", roles=op, kind=EventKind.INPUT,
              parent="casino"),
        Event("addToPot", "addToPot", roles=op, parent="casino"),
        Event("removeFromPot", "removeFromPot", roles=op, parent="casino"),
        Event("placeBet", "placeBet", kind=EventKind.INPUT, parent="casino"),
        Event("decideBet", "decideBet", roles=op, kind=EventKind.COMPUTE,
              expr=decide_expr, parent="casino"),
        Event("timeoutBet", "timeoutBet", roles=frozenset({"player"}),
              parent="casino"),
        Event("closeCasino", "closeCasino", roles=op, parent="casino"),
    ]
    relations = [
        # IDLE -> GAME_AVAILABLE
        Relation(_INCL, "createGame", "placeBet"),
        Relation(_EXCL, "createGame", "createGame"),
        Relation(_EXCL, "createGame", "closeCasino"),
        # GAME_AVAILABLE -> BET_PLACED. placeBet must stay included while the
        # bet is open (an excluded source would void the timeout condition),
        # so re-betting is blocked by the pending decideBet milestone instead.
        Relation(_INCL, "placeBet", "decideBet"),
        Relation(_INCL, "placeBet", "timeoutBet"),
        Relation(_RESP, "placeBet", "decideBet"),
        Relation(_COND, "placeBet", "timeoutBet", delay=DAY),
        Relation(_EXCL, "placeBet", "removeFromPot"),
        Relation(_MILE, "decideBet", "placeBet"),
        # BET_PLACED -> IDLE via the operator deciding
        Relation(_EXCL, "decideBet", "decideBet"),
        Relation(_EXCL, "decideBet", "timeoutBet"),
        Relation(_EXCL, "decideBet", "placeBet"),
        Relation(_INCL, "decideBet", "createGame"),
        Relation(_INCL, "decideBet", "removeFromPot"),
        Relation(_INCL, "decideBet", "closeCasino"),
        # BET_PLACED -> IDLE via the player claiming the timeout
        Relation(_CANC, "timeoutBet", "decideBet"),
        Relation(_EXCL, "timeoutBet", "decideBet"),
        Relation(_EXCL, "timeoutBet", "timeoutBet"),
        Relation(_EXCL, "timeoutBet", "placeBet"),
        Relation(_INCL, "timeoutBet", "createGame"),
        Relation(_INCL, "timeoutBet", "removeFromPot"),
        Relation(_INCL, "timeoutBet", "closeCasino"),
        # selfdestruct: one arrow kills the whole sub-process
        Relation(_EXCL, "closeCasino", "casino"),
    ]
    initial = Marking(included=frozenset(
        {"casino", "createGame", "addToPot", "removeFromPot", "closeCasino"}
    ))
    return Graph("casino", events, relations, initial,
                 declared_roles=("operator", "player"))


# --- fixtures and traces ------------------------------------------------------

def fixture_source(name: str) -> str:
    """Raw `.dcr` text of a shipped fixture, e.g. 'commit-and-reveal'."""
    return (resources.files(__package__) / "fixtures" / f"{name}.dcr").read_text(
        encoding="utf-8"
    )


def load_fixture(name: str) -> Graph:
    return parse_graph(fixture_source(name), file=f"{name}.dcr")


def trace_source(name: str) -> str:
    """Raw JSONL text of a shipped scenario trace, e.g. 'casino_happy_path'."""
    return (resources.files(__package__) / "traces" / f"{name}.jsonl").read_text(
        encoding="utf-8"
    )


def list_fixtures() -> list[str]:
    files = resources.files(__package__) / "fixtures"
    return sorted(p.name[: -len(".dcr")] for p in files.iterdir()
                  if p.name.endswith(".dcr"))


def list_traces() -> list[str]:
    files = resources.files(__package__) / "traces"
    return sorted(p.name[: -len(".jsonl")] for p in files.iterdir()
                  if p.name.endswith(".jsonl"))


def _fixture_builder(name: str) -> Callable[[], Graph]:
    return lambda: load_fixture(name)


_SOLIDITY_PATTERNS = "fravoll.github.io/solidity-patterns"
_BEST_PRACTICES = "consensys.github.io/smart-contract-best-practices"
_OZ_DOCS = "docs.openzeppelin.com/contracts"

_CATALOG: tuple[PatternDescriptor, ...] = (
    PatternDescriptor("time-constraint", _fixture_builder("time-constraint"),
                      _BEST_PRACTICES),
    PatternDescriptor("time-incentivization", build_time_incentivization,
                      "recurring community practice (Augur, MakerDAO, Compound)"),
    PatternDescriptor("automatic-deprecation",
                      _fixture_builder("automatic-deprecation"), _SOLIDITY_PATTERNS),
    PatternDescriptor("rate-limitation", build_rate_limitation, _BEST_PRACTICES,
                      parameters={"limit": 100, "period": DAY}),
    PatternDescriptor("speed-bump", _fixture_builder("speed-bump"), _BEST_PRACTICES),
    PatternDescriptor("safe-self-destruction",
                      _fixture_builder("safe-self-destruction"), _SOLIDITY_PATTERNS),
    PatternDescriptor("access-control", _fixture_builder("access-control"), _OZ_DOCS),
    PatternDescriptor("commit-and-reveal", build_commit_and_reveal,
                      _SOLIDITY_PATTERNS),
    PatternDescriptor("circuit-breaker", build_circuit_breaker, _BEST_PRACTICES),
    PatternDescriptor("escapability", _fixture_builder("escapability"),
                      "recurring community practice (escape hatches)"),
    PatternDescriptor("checks-effects-interactions",
                      _fixture_builder("checks-effects-interactions"),
                      _SOLIDITY_PATTERNS),
    PatternDescriptor("guard-check", _fixture_builder("guard-check"),
                      _SOLIDITY_PATTERNS),
    PatternDescriptor("abstract-contract-states",
                      _fixture_builder("abstract-contract-states"),
                      _SOLIDITY_PATTERNS),
    PatternDescriptor("secure-ether-transfer",
                      _fixture_builder("secure-ether-transfer"), _SOLIDITY_PATTERNS),
    PatternDescriptor("oracle", _fixture_builder("oracle"), _BEST_PRACTICES),
    PatternDescriptor("token", _fixture_builder("token"), _OZ_DOCS),
    PatternDescriptor("pull-over-push", _fixture_builder("pull-over-push"),
                      _SOLIDITY_PATTERNS),
    PatternDescriptor("upgradability", _fixture_builder("upgradability"), _OZ_DOCS),
    PatternDescriptor("governance", _fixture_builder("governance"), _OZ_DOCS),
    PatternDescriptor("casino", build_casino, "classic coin-toss betting exercise"),
)


def catalog() -> list[PatternDescriptor]:
    """All shipped pattern descriptors; the casino case study comes last."""
    return list(_CATALOG)


def get_pattern(name: str) -> PatternDescriptor:
    for descriptor in _CATALOG:
        if descriptor.name == name:
            return descriptor
    raise KeyError(name)
