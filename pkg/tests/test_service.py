import json
import random
import socket
import threading
import time

import httpx
import pytest
from fastapi.testclient import TestClient

from dcrsim.patterns import fixture_source
from dcrsim.service import create_app


@pytest.fixture()
def client():
    app = create_app()
    with TestClient(app) as c:
        yield c


def make_session(client, fixture="commit-and-reveal") -> str:
    r = client.post("/graphs", content=fixture_source(fixture))
    assert r.status_code == 201
    return r.json()["sessionId"]


def test_create_from_dsl_json_wrapper_and_canonical(client):
    from dcrsim.jsonio import graph_to_json
    from dcrsim.patterns import build_commit_and_reveal

    sid = make_session(client)
    assert sid
    r = client.post("/graphs", json={"dsl": "graph t { event a; }"})
    assert r.status_code == 201
    r = client.post("/graphs",
                    content=graph_to_json(build_commit_and_reveal()))
    assert r.status_code == 201


def test_create_rejects_bad_input(client):
    assert client.post("/graphs", content=b"graph oops {").status_code == 400
    assert client.post("/graphs", content=b"{\"nope\":").status_code == 400
    assert client.post("/graphs", json={"events": "x"}).status_code == 400
    # structurally fine but semantically invalid
    r = client.post("/graphs", content=b"graph g { event a; include a -> ghost; }")
    assert r.status_code == 400
    assert r.json()["error"] == "InvalidGraph"


def test_session_state_shape(client):
    sid = make_session(client)
    state = client.get(f"/sessions/{sid}").json()
    assert state["name"] == "commit_and_reveal"
    assert state["accepting"] is True
    assert state["time"] == 0
    by_id = {e["id"]: e for e in state["events"]}
    assert by_id["commit"]["included"] is True
    assert by_id["fail"]["included"] is False
    assert by_id["commit"]["enabledAnyRole"] is True
    assert by_id["reveal"]["enabledAnyRole"] is False
    assert by_id["commit"]["kind"] == "input"
    assert by_id["decide"]["kind"] == "compute"


def test_enabled_endpoint(client):
    sid = make_session(client)
    r = client.get(f"/sessions/{sid}/enabled", params={"role": "user"})
    assert r.json() == ["commit"]


def test_execute_flow(client):
    sid = make_session(client)
    r = client.post(f"/sessions/{sid}/execute",
                    json={"event": "commit", "role": "user",
                          "value": "9f9484fa3eeba4dd"})
    assert r.status_code == 200
    body = r.json()
    assert body["report"]["executedEvent"] == "commit"
    assert body["report"]["responsesSet"] == {"reveal": "inf"}
    assert body["state"]["accepting"] is False
    state = client.get(f"/sessions/{sid}").json()
    assert any(e["id"] == "commit" and e["executedAge"] == 0
               for e in state["events"])
    assert state["history"][0]["type"] == "execute"


def test_409_does_not_mutate(client):
    sid = make_session(client)
    before = client.get(f"/sessions/{sid}").json()
    r = client.post(f"/sessions/{sid}/execute",
                    json={"event": "reveal", "role": "user", "value": "42"})
    assert r.status_code == 409
    assert r.json()["error"] == "NotEnabled"
    assert r.json()["clause"] == "condition"
    after = client.get(f"/sessions/{sid}").json()
    assert before == after


def test_execute_rejections(client):
    sid = make_session(client)
    r = client.post(f"/sessions/{sid}/execute",
                    json={"event": "ghost", "role": "user"})
    assert r.status_code == 409 and r.json()["error"] == "UnknownEvent"
    r = client.post(f"/sessions/{sid}/execute",
                    json={"event": "commit", "role": "user"})
    assert r.status_code == 409 and r.json()["error"] == "MissingInput"
    r = client.post(f"/sessions/{sid}/execute", json={"event": "commit"})
    assert r.status_code == 400
    r = client.post(f"/sessions/{sid}/execute",
                    json={"event": "commit", "role": "user", "value": [1]})
    assert r.status_code == 400
    r = client.post(f"/sessions/{sid}/execute", content=b"}{")
    assert r.status_code == 400


def test_advance_and_deadline_conflict(client):
    sid = make_session(client, "rate-limitation")
    r = client.post(f"/sessions/{sid}/advance", json={"duration": "PT1H"})
    assert r.status_code == 200
    assert r.json()["state"]["time"] == 3600
    r = client.post(f"/sessions/{sid}/advance", json={"duration": "P2D"})
    assert r.status_code == 409
    body = r.json()
    assert body["error"] == "DeadlineViolation"
    assert body["events"] == [{"event": "new_period", "deadline": 82800}]
    # state unchanged by the rejection
    assert client.get(f"/sessions/{sid}").json()["time"] == 3600
    r = client.post(f"/sessions/{sid}/advance", json={"duration": 0})
    assert r.status_code == 200
    r = client.post(f"/sessions/{sid}/advance", json={"duration": "bogus"})
    assert r.status_code == 400
    r = client.post(f"/sessions/{sid}/advance", json={"duration": -5})
    assert r.status_code == 400


def test_reset_and_accepting(client):
    sid = make_session(client)
    client.post(f"/sessions/{sid}/execute",
                json={"event": "commit", "role": "user", "value": "x"})
    assert client.get(f"/sessions/{sid}/accepting").json() == {"accepting": False}
    r = client.post(f"/sessions/{sid}/reset")
    assert r.status_code == 200
    assert client.get(f"/sessions/{sid}/accepting").json() == {"accepting": True}
    assert client.get(f"/sessions/{sid}").json()["history"] == []


def test_export_dot_endpoint(client):
    sid = make_session(client)
    r = client.get(f"/sessions/{sid}/export.dot")
    assert r.status_code == 200
    assert r.headers["content-type"].startswith("text/vnd.graphviz")
    assert r.text.startswith('digraph "commit_and_reveal"')
    client.post(f"/sessions/{sid}/execute",
                json={"event": "commit", "role": "user", "value": "x"})
    assert "! reveal" in client.get(f"/sessions/{sid}/export.dot").text


def test_unknown_session_404(client):
    assert client.get("/sessions/zzz").status_code == 404
    assert client.post("/sessions/zzz/execute", json={}).status_code == 404
    assert client.post("/sessions/zzz/advance", json={}).status_code == 404
    assert client.get("/sessions/zzz/export.dot").status_code == 404


def test_session_isolation(client):
    a = make_session(client)
    b = make_session(client)
    client.post(f"/sessions/{a}/execute",
                json={"event": "commit", "role": "user", "value": "x"})
    state_b = client.get(f"/sessions/{b}").json()
    assert state_b["accepting"] is True
    assert state_b["history"] == []


def test_session_ttl_eviction():
    app = create_app(session_ttl=0.0)
    with TestClient(app) as client:
        sid = make_session(client)
        time.sleep(0.01)
        assert client.get(f"/sessions/{sid}").status_code == 404


def test_fuzz_endpoints_never_5xx(client):
    rng = random.Random(20240817)
    corpus = [
        b"", b"{}", b"[]", b"null", b"graph", b"{\"dsl\": 5}",
        fixture_source("casino").encode()[:100],
        b'{"event": null, "role": {}}', b"\xff\xfe\x00", b'"inf"',
    ]
    sid = make_session(client)
    paths = ["/graphs", f"/sessions/{sid}/execute", f"/sessions/{sid}/advance"]
    for i in range(600):
        base = rng.choice(corpus)
        junk = bytes(rng.randrange(256) for _ in range(rng.randrange(0, 24)))
        body = base + junk if rng.random() < 0.7 else junk
        r = client.post(rng.choice(paths), content=body)
        assert r.status_code < 500, (r.status_code, body)


def _free_port() -> int:
    with socket.socket() as s:
        s.bind(("127.0.0.1", 0))
        return s.getsockname()[1]


def test_stream_pushes_state_changes():
    import uvicorn

    app = create_app()
    port = _free_port()
    config = uvicorn.Config(app, host="127.0.0.1", port=port, log_level="error")
    server = uvicorn.Server(config)
    thread = threading.Thread(target=server.run, daemon=True)
    thread.start()
    try:
        deadline = time.time() + 10
        while not server.started:
            if time.time() > deadline:
                raise RuntimeError("server did not start")
            time.sleep(0.02)
        base = f"http://127.0.0.1:{port}"
        with httpx.Client(base_url=base, timeout=10.0) as http:
            sid = make_session(http)
            events = []
            with http.stream("GET", f"/sessions/{sid}/events/stream") as stream:
                lines = stream.iter_lines()
                assert json.loads(next(lines))["type"] == "hello"

                def poke():
                    with httpx.Client(base_url=base, timeout=10.0) as http2:
                        http2.post(f"/sessions/{sid}/execute",
                                   json={"event": "commit", "role": "user",
                                         "value": "x"})
                        http2.post(f"/sessions/{sid}/advance",
                                   json={"duration": "PT0S"})

                poker = threading.Thread(target=poke)
                poker.start()
                for line in lines:
                    if not line.strip():
                        continue
                    message = json.loads(line)
                    if message["type"] == "heartbeat":
                        continue
                    events.append(message)
                    if len(events) == 2:
                        break
                poker.join()
            assert [e["type"] for e in events] == ["execute", "advance"]
            assert events[0]["state"]["accepting"] is False
            by_id = {e["id"]: e for e in events[0]["state"]["events"]}
            assert by_id["reveal"]["deadline"] == "inf"
    finally:
        server.should_exit = True
        thread.join(timeout=5)
