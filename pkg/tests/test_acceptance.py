"""Acceptance suite: one test per criterion, one PASS/FAIL line each.

Run with `pytest -s tests/test_acceptance.py` to see the lines as they print.
Every tolerance is exact-match unless stated otherwise in the criterion.
"""

import random
import time
from contextlib import contextmanager

from dcrsim.conformance import AgentPolicy, TraceEntry, load_trace, replay, replay_run
from dcrsim.dsl import parse_graph, serialize_graph
from dcrsim.durations import DAY, HOUR, MONTH
from dcrsim.engine import advance_time, enabled_events, execute, is_enabled
from dcrsim.errors import DcrError, ParseError
from dcrsim.exprs import hash_value
from dcrsim.jsonio import from_json, graph_to_json, marking_to_json
from dcrsim.patterns import (
    build_casino,
    build_circuit_breaker,
    build_commit_and_reveal,
    build_rate_limitation,
    build_time_incentivization,
    fixture_source,
    list_fixtures,
    load_fixture,
    trace_source,
)

from helpers import random_graph
from test_engine import run_oracle_agreement

ALL_ROLES = ("operator", "player", "admin", "user", "system", "monitor",
             "bank", "client", "anyone")


@contextmanager
def criterion(number: int, label: str):
    started = time.perf_counter()
    try:
        yield
    except BaseException:
        print(f"\nACCEPTANCE C{number} {label}: FAIL")
        raise
    elapsed = time.perf_counter() - started
    print(f"\nACCEPTANCE C{number} {label}: PASS ({elapsed:.2f}s)")


def test_c1_commit_and_reveal_scenario():
    with criterion(1, "commit-and-reveal scenario"):
        started = time.perf_counter()
        g = build_commit_and_reveal()
        assert enabled_events(g, g.initial, "user") == {"commit"}

        secret = "42"
        m, _ = execute(g, g.initial, "commit", "user", hash_value(secret))
        assert m.required.get("reveal") is not None  # reveal is required
        assert "reveal" in m.included
        assert not is_enabled(g, m, "commit", "user")  # milestone-blocked

        m, _ = execute(g, m, "reveal", "user", secret)
        m, _ = execute(g, m, "decide", "user")
        assert "pass" in m.included and "fail" not in m.included

        m2, _ = execute(g, g.initial, "commit", "user", "wrong-digest")
        m2, _ = execute(g, m2, "reveal", "user", secret)
        m2, _ = execute(g, m2, "decide", "user")
        assert "fail" in m2.included and "pass" not in m2.included

        assert time.perf_counter() - started < 1.0


def test_c2_time_incentivization_boundary():
    with criterion(2, "time incentivization boundaries"):
        g = build_time_incentivization()
        m, _ = execute(g, g.initial, "give_loan", "bank")
        at_2591999 = advance_time(g, m, 2_591_999)
        assert not is_enabled(g, at_2591999, "fine", "bank")
        at_2592000 = advance_time(g, at_2591999, 1)
        assert MONTH == 2_592_000
        assert is_enabled(g, at_2592000, "fine", "bank")

        paid, _ = execute(g, m, "pay_loan", "client")
        assert "fine" not in paid.included
        for delta in (MONTH, 12 * MONTH):
            later = advance_time(g, paid, delta)
            assert not is_enabled(g, later, "fine", "bank")


def test_c3_rate_limitation():
    with criterion(3, "rate limitation with system agent"):
        g = build_rate_limitation(limit=100)
        m, _ = execute(g, g.initial, "set_limit", "admin", 100)
        m = advance_time(g, m, HOUR)
        m, _ = execute(g, m, "withdraw", "user", 60)
        m, _ = execute(g, m, "rate_limiter", "system")  # what the agent does
        assert m.values["rate_limiter"] == 60
        assert is_enabled(g, m, "withdraw", "user")
        m, _ = execute(g, m, "withdraw", "user", 40)
        m, _ = execute(g, m, "rate_limiter", "system")
        assert m.values["rate_limiter"] == 100
        assert not is_enabled(g, m, "withdraw", "user")  # total reached the limit

        m = advance_time(g, m, DAY - HOUR)
        m, report = execute(g, m, "new_period", "system")
        assert report.values_copied == {"rate_limiter": 0}  # value 0 copied
        assert m.values["rate_limiter"] == 0
        assert is_enabled(g, m, "withdraw", "user")  # re-enabled

        # same story end to end through the conformance monitor
        result = replay_run(g, load_trace(trace_source("rate_limit_period")),
                            [AgentPolicy("system")])
        assert result.verdict.status == "Conformant"
        assert (DAY, "new_period") in result.agent_firings


def test_c4_circuit_breaker():
    with criterion(4, "circuit breaker freeze/revive/escape"):
        g = build_circuit_breaker()
        m, _ = execute(g, g.initial, "panic", "monitor")
        for event, role in (("buy", "user"), ("sell", "user"),
                            ("transfer", "user"), ("panic", "monitor")):
            assert not is_enabled(g, m, event, role)

        revived, _ = execute(g, m, "revive", "admin")
        for event, role in (("buy", "user"), ("sell", "user"),
                            ("transfer", "user"), ("panic", "monitor")):
            assert is_enabled(g, revived, event, role)

        assert not is_enabled(g, m, "escape_hatch", "admin")
        escaped, _ = execute(g, m, "contingency", "admin")
        assert is_enabled(g, escaped, "escape_hatch", "admin")


def test_c5_casino_traces():
    with criterion(5, "casino shipped traces and timeout boundary"):
        g = build_casino()
        for name in ("casino_happy_path", "casino_operator_wins",
                     "casino_player_timeout", "casino_close"):
            verdict = replay(g, load_trace(trace_source(name)))
            assert verdict.status == "Conformant", (name, verdict)

        early = [
            TraceEntry(1, 0, "operator", "createGame", "h1"),
            TraceEntry(2, 10, "player", "placeBet", "heads"),
            TraceEntry(3, 10 + 86_399, "player", "timeoutBet"),
        ]
        verdict = replay(g, early)
        assert verdict.status == "Violation"
        assert verdict.violation.reason == "NotEnabled(condition)"

        closed = replay_run(g, load_trace(trace_source("casino_close")))
        final = closed.marking
        assert "casino" not in final.included
        for event in g.events:
            for role in ALL_ROLES:
                assert not is_enabled(g, final, event, role)


def test_c6_semantics_oracle_thousand_graphs():
    with criterion(6, "oracle agreement on 1000 random graphs"):
        disagreements = run_oracle_agreement(
            n_graphs=1000, seed=20240817, with_data=False, max_steps=12
        )
        assert disagreements == []


def test_c7_roundtrip_and_fuzz():
    with criterion(7, "round-trip identity and 10k-input fuzz"):
        for name in list_fixtures():
            g = load_fixture(name)
            text = serialize_graph(g)
            assert graph_to_json(parse_graph(text)) == graph_to_json(g), name

        rng = random.Random(99)
        for _ in range(1000):
            g = random_graph(rng, with_data=True)
            text = serialize_graph(g)
            assert graph_to_json(parse_graph(text)) == graph_to_json(g)

        corpus = [fixture_source(n) for n in ("casino", "commit-and-reveal",
                                              "rate-limitation", "governance")]
        json_corpus = [graph_to_json(build_casino()),
                       marking_to_json(build_casino().initial)]

        fuzzed = 0
        for _ in range(6000):  # DSL parser
            try:
                parse_graph(_mutate(rng, rng.choice(corpus)))
            except ParseError:
                pass
            fuzzed += 1
        for _ in range(2000):  # JSON codec
            try:
                from_json(_mutate(rng, rng.choice(json_corpus)))
            except DcrError:
                pass
            fuzzed += 1

        from fastapi.testclient import TestClient

        from dcrsim.service import create_app

        with TestClient(create_app()) as client:
            sid = client.post("/graphs", content=corpus[1]).json()["sessionId"]
            paths = ["/graphs", f"/sessions/{sid}/execute",
                     f"/sessions/{sid}/advance"]
            seeds = corpus + json_corpus + ['{"event":"commit","role":"user"}',
                                            '{"duration":"P1D"}']
            for _ in range(2000):  # HTTP endpoints
                body = _mutate(rng, rng.choice(seeds)).encode("utf-8", "replace")
                response = client.post(rng.choice(paths), content=body)
                assert response.status_code < 500
                fuzzed += 1
        assert fuzzed == 10_000


def _mutate(rng: random.Random, text: str) -> str:
    chars = list(text)
    for _ in range(rng.randrange(1, 12)):
        kind = rng.random()
        pos = rng.randrange(len(chars) + 1)
        if kind < 0.4 and chars:
            chars[min(pos, len(chars) - 1)] = chr(rng.randrange(1, 0x2FF))
        elif kind < 0.7:
            chars.insert(pos, rng.choice('{}();"->%+*/ \n\t#P1DZλ'))
        elif chars:
            del chars[min(pos, len(chars) - 1)]
    if rng.random() < 0.1:
        rng.shuffle(chars)
    return "".join(chars)


def test_c8_replay_determinism():
    with criterion(8, "byte-identical verdicts and final markings"):
        runs = {
            "casino_happy_path": (build_casino, []),
            "casino_operator_wins": (build_casino, []),
            "casino_player_timeout": (build_casino, []),
            "casino_close": (build_casino, []),
            "commit_reveal_match": (build_commit_and_reveal, []),
            "rate_limit_period": (build_rate_limitation,
                                  [AgentPolicy("system")]),
        }
        for name, (build, agents) in runs.items():
            trace = load_trace(trace_source(name))
            first = replay_run(build(), trace, agents)
            second = replay_run(build(), trace, agents)
            assert first.verdict.to_json() == second.verdict.to_json(), name
            assert (marking_to_json(first.marking)
                    == marking_to_json(second.marking)), name
