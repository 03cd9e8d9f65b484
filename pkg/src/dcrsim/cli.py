"""`dcr` command line tool.

Sub-commands: validate, enabled, simulate, replay, pattern, export-dot,
serve. Exit codes: 0 success/conformant, 1 violation or validation errors,
2 usage, IO or parse errors. Set DCR_NO_COLOR=1 to disable ANSI styling.
"""

from __future__ import annotations

import argparse
import os
import sys

from . import patterns
from .conformance import AgentPolicy, load_trace, replay_run
from .dot import export_dot
from .dsl import parse_graph, serialize_graph
from .durations import parse_duration
from .engine import advance_time, enabled_events, execute, is_accepting
from .errors import DcrError, ParseError
from .jsonio import graph_from_json, marking_from_json, marking_to_json
from .model import Graph, Marking, validate


def _use_color(stream) -> bool:
    return stream.isatty() and os.environ.get("DCR_NO_COLOR") != "1"


def _style(text: str, code: str, stream) -> str:
    if _use_color(stream):
        return f"\033[{code}m{text}\033[0m"
    return text


def load_graph_file(path: str) -> Graph:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    if path.endswith(".dcr.json") or text.lstrip().startswith("{"):
        return graph_from_json(text)
    return parse_graph(text, file=path)


def _load_marking(path: str | None, graph: Graph) -> Marking:
    if path is None:
        return graph.initial.copy()
    with open(path, encoding="utf-8") as fh:
        return marking_from_json(fh.read())


def cmd_validate(args) -> int:
    graph = load_graph_file(args.file)
    report = validate(graph)
    for finding in report.errors:
        print(_style(str(finding), "31", sys.stdout))
    for finding in report.warnings:
        print(_style(str(finding), "33", sys.stdout))
    if report.ok:
        print(f"ok: {len(graph.events)} events, {len(graph.relations)} relations,"
              f" {len(report.warnings)} warning(s)")
        return 0
    return 1


def cmd_enabled(args) -> int:
    graph = load_graph_file(args.file)
    marking = _load_marking(args.marking, graph)
    for event in sorted(enabled_events(graph, marking, args.role)):
        print(event)
    return 0


def _parse_repl_value(token: str):
    if token.startswith('"') and token.endswith('"') and len(token) >= 2:
        return token[1:-1]
    if token == "true":
        return True
    if token == "false":
        return False
    try:
        return int(token)
    except ValueError:
        return token


def cmd_simulate(args) -> int:
    graph = load_graph_file(args.file)
    marking = graph.initial.copy()
    interactive = sys.stdin.isatty()
    if interactive:
        print(f"simulating {graph.name!r}; commands: enabled <role> | "
              f"exec <role> <event> [value] | advance <DUR> | marking | accepting | quit")
    while True:
        if interactive:
            print("dcr> ", end="", flush=True)
        line = sys.stdin.readline()
        if not line:
            break
        words = line.split()
        if not words:
            continue
        cmd, rest = words[0], words[1:]
        try:
            if cmd == "quit":
                break
            elif cmd == "enabled" and len(rest) == 1:
                print(" ".join(sorted(enabled_events(graph, marking, rest[0]))) or "-")
            elif cmd == "exec" and len(rest) in (2, 3):
                value = _parse_repl_value(rest[2]) if len(rest) == 3 else None
                marking, report = execute(graph, marking, rest[1], rest[0], value)
                completed = "".join(
                    f" +completed:{p}" for p in report.completed_subprocesses
                )
                print(f"executed {rest[1]}{completed}")
            elif cmd == "advance" and len(rest) == 1:
                marking = advance_time(graph, marking, parse_duration(rest[0]))
                print("advanced")
            elif cmd == "marking" and not rest:
                print(marking_to_json(marking))
            elif cmd == "accepting" and not rest:
                print("true" if is_accepting(graph, marking) else "false")
            else:
                print(f"? unknown command: {line.strip()}", file=sys.stderr)
        except DcrError as exc:
            print(f"error: {exc}", file=sys.stderr)
    return 0


def cmd_replay(args) -> int:
    graph = load_graph_file(args.file)
    with open(args.trace, encoding="utf-8") as fh:
        trace = load_trace(fh.read())
    agents = [AgentPolicy(role) for role in args.agent]
    result = replay_run(graph, trace, agents)
    print(result.verdict.to_json())
    return 0 if result.verdict.status == "Conformant" else 1


def cmd_pattern(args) -> int:
    try:
        descriptor = patterns.get_pattern(args.name)
    except KeyError:
        names = ", ".join(d.name for d in patterns.catalog())
        print(f"unknown pattern {args.name!r}; available: {names}", file=sys.stderr)
        return 2
    if args.param:
        params = {}
        for assignment in args.param:
            key, sep, raw = assignment.partition("=")
            if not sep:
                print(f"bad --param {assignment!r}, expected k=v", file=sys.stderr)
                return 2
            if key not in descriptor.parameters:
                allowed = sorted(descriptor.parameters) or ["<none>"]
                print(f"pattern {args.name!r} has no parameter {key!r}"
                      f" (allowed: {', '.join(allowed)})", file=sys.stderr)
                return 2
            try:
                params[key] = (parse_duration(raw) if raw.startswith("P")
                               else int(raw))
            except (DcrError, ValueError) as exc:
                print(f"bad --param {assignment!r}: {exc}", file=sys.stderr)
                return 2
        text = serialize_graph(descriptor.build(**params))
    else:
        # default build ships as a documented fixture file; emit it verbatim
        text = patterns.fixture_source(args.name)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        print(text, end="")
    return 0


def cmd_export_dot(args) -> int:
    graph = load_graph_file(args.file)
    marking = _load_marking(args.marking, graph) if args.marking else None
    text = export_dot(graph, marking)
    if args.output:
        with open(args.output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        print(text, end="")
    return 0


def cmd_serve(args) -> int:
    import uvicorn

    from .service import create_app

    ui_dir = args.ui_dir
    if ui_dir is None and os.path.isdir("frontend/dist"):
        ui_dir = "frontend/dist"
    app = create_app(cors=args.cors, session_ttl=args.session_ttl, ui_dir=ui_dir)
    if ui_dir:
        print(f"serving UI from {ui_dir} at /ui/", file=sys.stderr)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def build_arg_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="dcr", description="Timed DCR graph toolchain"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("validate", help="parse a model and check its invariants")
    p.add_argument("file")
    p.set_defaults(fn=cmd_validate)

    p = sub.add_parser("enabled", help="print enabled events, one per line")
    p.add_argument("file")
    p.add_argument("--role", required=True)
    p.add_argument("--marking", help="marking JSON file (default: initial)")
    p.set_defaults(fn=cmd_enabled)

    p = sub.add_parser("simulate", help="interactive line-oriented simulation")
    p.add_argument("file")
    p.set_defaults(fn=cmd_simulate)

    p = sub.add_parser("replay", help="check a JSONL trace against a model")
    p.add_argument("file")
    p.add_argument("trace")
    p.add_argument("--agent", action="append", default=[], metavar="ROLE",
                   help="automatic at-deadline agent for ROLE (repeatable)")
    p.set_defaults(fn=cmd_replay)

    p = sub.add_parser("pattern", help="emit a pattern catalog model as .dcr")
    p.add_argument("name")
    p.add_argument("--param", action="append", default=[], metavar="K=V")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_pattern)

    p = sub.add_parser("export-dot", help="render a model to Graphviz DOT")
    p.add_argument("file")
    p.add_argument("--marking", help="marking JSON file (default: initial)")
    p.add_argument("-o", "--output")
    p.set_defaults(fn=cmd_export_dot)

    p = sub.add_parser("serve", help="start the HTTP simulation service")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--cors", action="store_true")
    p.add_argument("--session-ttl", type=int, default=3600,
                   help="idle session eviction, seconds (default 3600)")
    p.add_argument("--ui-dir", help="static web UI directory"
                   " (default: frontend/dist when present)")
    p.set_defaults(fn=cmd_serve)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_arg_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return 2
    except FileNotFoundError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except DcrError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except OSError as exc:
        print(f"io error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
