"""HTTP facade exposing simulation sessions.

Sessions are in-memory only and evicted after an idle TTL. Each session's
mutations are serialized by a per-session lock; a rejected request (409)
never changes observable state. A line-oriented stream endpoint pushes one
JSON object per state change for UI refresh.
"""

from __future__ import annotations

import json
import queue
import threading
import time
import uuid
from dataclasses import dataclass, field
from pathlib import Path
from typing import Any

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse, PlainTextResponse, StreamingResponse

from .dot import export_dot
from .dsl import parse_graph
from .durations import parse_duration
from .engine import advance_time, enabledness, execute, is_accepting
from .errors import (
    DcrError,
    DeadlineViolationError,
    MissingInputError,
    NotEnabledError,
    ParseError,
    SchemaViolationError,
    UnexpectedInputError,
)
from .exprs import UNDEFINED, Value
from .jsonio import graph_from_obj
from .model import INFINITY, EffectReport, EventKind, Graph, Marking, validate

_ANY_ROLE_PROBE = "--anyone--"  # not a valid role name, so only role-free chains pass


def _value_obj(v: Value | None) -> Any:
    return None if v is None or v is UNDEFINED else v


def _deadline_obj(dl) -> Any:
    return "inf" if dl is INFINITY else dl


def report_to_obj(report: EffectReport) -> dict:
    return {
        "executedEvent": report.executed_event,
        "newValue": _value_obj(report.new_value),
        "included": sorted(report.included),
        "excluded": sorted(report.excluded),
        "responsesSet": {e: _deadline_obj(d)
                         for e, d in sorted(report.responses_set.items())},
        "cancelled": sorted(report.cancelled),
        "valuesCopied": {e: _value_obj(v)
                         for e, v in sorted(report.values_copied.items())},
        "completedSubprocesses": list(report.completed_subprocesses),
    }


@dataclass
class Session:
    id: str
    graph: Graph
    marking: Marking
    created_at: float
    last_access: float
    clock: int = 0  # steps advanced since session start
    history: list[dict] = field(default_factory=list)
    seq: int = 0
    lock: threading.Lock = field(default_factory=threading.Lock)
    subscribers: list[queue.SimpleQueue] = field(default_factory=list)


class SessionStore:
    def __init__(self, ttl_seconds: float):
        self.ttl = ttl_seconds
        self._sessions: dict[str, Session] = {}
        self._lock = threading.Lock()

    def create(self, graph: Graph) -> Session:
        session = Session(
            id=uuid.uuid4().hex,
            graph=graph,
            marking=graph.initial.copy(),
            created_at=time.time(),
            last_access=time.time(),
        )
        with self._lock:
            self._evict_locked()
            self._sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session | None:
        with self._lock:
            self._evict_locked()
            session = self._sessions.get(session_id)
            if session is not None:
                session.last_access = time.time()
            return session

    def _evict_locked(self) -> None:
        deadline = time.time() - self.ttl
        for sid in [s for s, sess in self._sessions.items()
                    if sess.last_access < deadline]:
            del self._sessions[sid]


def session_state(session: Session) -> dict:
    graph = session.graph
    marking = session.marking
    universe = graph.role_universe()
    events = []
    for ev in graph.events.values():
        enabled_roles = [r for r in universe
                         if enabledness(graph, marking, ev.id, r).enabled]
        events.append({
            "id": ev.id,
            "action": ev.action,
            "roles": sorted(ev.roles),
            "kind": ev.kind.value,
            "parent": ev.parent,
            "included": ev.id in marking.included,
            "executedAge": marking.executed.get(ev.id),
            "deadline": _deadline_obj(marking.required[ev.id])
            if ev.id in marking.required else None,
            "value": _value_obj(marking.values.get(ev.id)),
            "enabledRoles": enabled_roles,
            "enabledAnyRole": enabledness(graph, marking, ev.id,
                                          _ANY_ROLE_PROBE).enabled,
        })
    return {
        "sessionId": session.id,
        "name": graph.name,
        "roles": list(universe),
        "time": session.clock,
        "accepting": is_accepting(graph, marking),
        "events": events,
        "history": session.history,
    }


def _notify(session: Session, cause: str) -> None:
    session.seq += 1
    message = {"type": cause, "seq": session.seq, "state": session_state(session)}
    for q in list(session.subscribers):
        q.put(message)


def _error(status: int, error: str, **extra) -> JSONResponse:
    return JSONResponse({"error": error, **extra}, status_code=status)


def create_app(cors: bool = False, session_ttl: float = 3600.0,
               ui_dir: str | None = None) -> FastAPI:
    app = FastAPI(title="dcrsim", version="0.1.0")
    store = SessionStore(session_ttl)
    app.state.store = store

    if cors:
        from fastapi.middleware.cors import CORSMiddleware

        app.add_middleware(
            CORSMiddleware, allow_origins=["*"], allow_methods=["*"],
            allow_headers=["*"],
        )

    def _session_or_404(session_id: str):
        session = store.get(session_id)
        if session is None:
            return None, _error(404, "UnknownSession", sessionId=session_id)
        return session, None

    @app.post("/graphs")
    async def post_graphs(request: Request):
        try:
            text = (await request.body()).decode("utf-8")
        except UnicodeDecodeError:
            return _error(400, "BadRequest", detail="body must be UTF-8")
        graph, failure = _graph_from_body(text)
        if failure is not None:
            return failure
        report = validate(graph)
        if not report.ok:
            return _error(400, "InvalidGraph",
                          findings=[str(f) for f in report.errors])
        session = store.create(graph)
        return JSONResponse({"sessionId": session.id}, status_code=201)

    @app.get("/sessions/{session_id}")
    def get_session(session_id: str):
        session, failure = _session_or_404(session_id)
        if failure is not None:
            return failure
        with session.lock:
            return session_state(session)

    @app.get("/sessions/{session_id}/enabled")
    def get_enabled(session_id: str, role: str = ""):
        session, failure = _session_or_404(session_id)
        if failure is not None:
            return failure
        with session.lock:
            graph, marking = session.graph, session.marking
            events = sorted(
                e for e in graph.events
                if enabledness(graph, marking, e, role).enabled
            )
        return events

    @app.post("/sessions/{session_id}/execute")
    async def post_execute(session_id: str, request: Request):
        session, failure = _session_or_404(session_id)
        if failure is not None:
            return failure
        obj, failure = _json_body(await request.body(),
                                  {"event", "role", "value"}, {"event", "role"})
        if failure is not None:
            return failure
        event, role = obj["event"], obj["role"]
        if not isinstance(event, str) or not isinstance(role, str):
            return _error(400, "BadRequest", detail="event and role must be strings")
        value = obj.get("value")
        if value is not None and not isinstance(value, (int, bool, str)):
            return _error(400, "BadRequest",
                          detail="value must be integer, boolean or string")
        with session.lock:
            if event not in session.graph.events:
                return _error(409, "UnknownEvent", event=event)
            try:
                new_marking, report = execute(session.graph, session.marking,
                                              event, role, value)
            except NotEnabledError as exc:
                return _error(409, "NotEnabled", event=event, clause=exc.clause,
                              detail=exc.detail)
            except MissingInputError:
                return _error(409, "MissingInput", event=event)
            except UnexpectedInputError:
                return _error(409, "UnexpectedInput", event=event)
            except DcrError as exc:
                return _error(409, "Rejected", detail=str(exc))
            session.marking = new_marking
            entry = {"type": "execute", "at": session.clock, "event": event,
                     "role": role, "report": report_to_obj(report)}
            if value is not None:
                entry["value"] = value
            session.history.append(entry)
            _notify(session, "execute")
            return {"report": report_to_obj(report), "state": session_state(session)}

    @app.post("/sessions/{session_id}/advance")
    async def post_advance(session_id: str, request: Request):
        session, failure = _session_or_404(session_id)
        if failure is not None:
            return failure
        obj, failure = _json_body(await request.body(), {"duration"}, {"duration"})
        if failure is not None:
            return failure
        duration = obj["duration"]
        if isinstance(duration, str):
            try:
                steps = parse_duration(duration)
            except DcrError as exc:
                return _error(400, "BadRequest", detail=str(exc))
        elif isinstance(duration, int) and not isinstance(duration, bool) \
                and duration >= 0:
            steps = duration
        else:
            return _error(400, "BadRequest",
                          detail="duration must be an ISO-8601 string or"
                                 " a non-negative integer")
        with session.lock:
            try:
                new_marking = advance_time(session.graph, session.marking, steps)
            except DeadlineViolationError as exc:
                return _error(409, "DeadlineViolation",
                              events=[{"event": e, "deadline": d}
                                      for e, d in exc.offenders])
            session.marking = new_marking
            session.clock += steps
            session.history.append({"type": "advance", "at": session.clock,
                                    "steps": steps})
            _notify(session, "advance")
            return {"state": session_state(session)}

    @app.post("/sessions/{session_id}/reset")
    def post_reset(session_id: str):
        session, failure = _session_or_404(session_id)
        if failure is not None:
            return failure
        with session.lock:
            session.marking = session.graph.initial.copy()
            session.clock = 0
            session.history = []
            _notify(session, "reset")
            return {"state": session_state(session)}

    @app.get("/sessions/{session_id}/accepting")
    def get_accepting(session_id: str):
        session, failure = _session_or_404(session_id)
        if failure is not None:
            return failure
        with session.lock:
            return {"accepting": is_accepting(session.graph, session.marking)}

    @app.get("/sessions/{session_id}/export.dot")
    def get_dot(session_id: str):
        session, failure = _session_or_404(session_id)
        if failure is not None:
            return failure
        with session.lock:
            text = export_dot(session.graph, session.marking)
        return PlainTextResponse(text, media_type="text/vnd.graphviz")

    @app.get("/sessions/{session_id}/events/stream")
    def get_stream(session_id: str):
        session, failure = _session_or_404(session_id)
        if failure is not None:
            return failure
        q: queue.SimpleQueue = queue.SimpleQueue()
        with session.lock:
            session.subscribers.append(q)

        def lines():
            try:
                yield json.dumps({"type": "hello", "seq": session.seq}) + "\n"
                while True:
                    try:
                        message = q.get(timeout=10.0)
                        yield json.dumps(message) + "\n"
                    except queue.Empty:
                        yield json.dumps({"type": "heartbeat"}) + "\n"
            finally:
                with session.lock:
                    if q in session.subscribers:
                        session.subscribers.remove(q)

        return StreamingResponse(lines(), media_type="application/x-ndjson")

    if ui_dir and Path(ui_dir).is_dir():
        from fastapi.staticfiles import StaticFiles

        app.mount("/ui", StaticFiles(directory=ui_dir, html=True), name="ui")

    return app


def _graph_from_body(text: str) -> tuple[Graph | None, JSONResponse | None]:
    """Accept canonical graph JSON, {"dsl": "..."} wrappers, or raw DSL."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            return None, _error(400, "BadRequest", detail=f"invalid JSON: {exc}")
        if isinstance(obj, dict) and isinstance(obj.get("dsl"), str):
            return _parse_dsl(obj["dsl"])
        try:
            return graph_from_obj(obj), None
        except SchemaViolationError as exc:
            return None, _error(400, "SchemaViolation", detail=str(exc))
    return _parse_dsl(text)


def _parse_dsl(text: str) -> tuple[Graph | None, JSONResponse | None]:
    try:
        return parse_graph(text), None
    except ParseError as exc:
        return None, _error(400, "ParseError", detail=exc.message,
                            line=exc.line, column=exc.column)


def _json_body(body: bytes, allowed: set[str],
               required: set[str]) -> tuple[dict | None, JSONResponse | None]:
    try:
        obj = json.loads(body.decode("utf-8"))
    except (UnicodeDecodeError, json.JSONDecodeError) as exc:
        return None, _error(400, "BadRequest", detail=f"invalid JSON body: {exc}")
    if not isinstance(obj, dict):
        return None, _error(400, "BadRequest", detail="body must be a JSON object")
    unknown = set(obj) - allowed
    if unknown:
        return None, _error(400, "BadRequest",
                            detail=f"unknown field(s): {sorted(unknown)}")
    missing = required - set(obj)
    if missing:
        return None, _error(400, "BadRequest",
                            detail=f"missing field(s): {sorted(missing)}")
    return obj, None
