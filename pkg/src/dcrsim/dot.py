"""Graphviz DOT export.

Events render as boxes using the usual DCR visual code: dashed border for
excluded events, a check-mark prefix once executed, a "!" prefix while the
event is required. Relation kinds get the conventional colours and a short
symbol on the edge label, with guard text and delay/deadline appended.
Sub-processes become clusters containing the parent node and its children.
"""

from __future__ import annotations

from .durations import format_duration
from .dsl import format_expression
from .model import INFINITY, Graph, Marking, RelationKind

_EDGE_STYLE = {
    RelationKind.CONDITION: ("#ffa500", "->•", "dot", None),
    RelationKind.RESPONSE: ("#1d8fff", "•->", "normal", "dot"),
    RelationKind.MILESTONE: ("#ba1fe5", "->◇", "odiamond", None),
    RelationKind.INCLUDE: ("#29a719", "->+", "normal", None),
    RelationKind.EXCLUDE: ("#c10300", "->%", "normal", None),
    RelationKind.CANCEL: ("#8c6026", "•->×", "tee", "dot"),
    RelationKind.VALUE: ("#8c8c8c", "->=", "vee", None),
}


def _quote(s: str) -> str:
    escaped = s.replace("\\", "\\\\").replace('"', '\\"').replace("\n", "\\n")
    return f'"{escaped}"'


def export_dot(graph: Graph, marking: Marking | None = None) -> str:
    """Render the graph (with the given or the initial marking) as DOT text."""
    m = marking if marking is not None else graph.initial
    lines = [f"digraph {_quote(graph.name)} {{"]
    lines.append("  rankdir=TB;")
    lines.append('  node [shape=box, style=rounded, fontname="Helvetica"];')
    lines.append('  edge [fontname="Helvetica", fontsize=10];')

    roots = [e for e in graph.events.values()
             if e.parent is None and e.id not in graph.children]
    for ev in roots:
        lines.append("  " + _node(graph, m, ev.id))
    for parent in graph.events.values():
        if parent.id in graph.children and parent.parent is None:
            _emit_cluster(graph, m, parent.id, lines, indent="  ")

    for rel in graph.relations:
        color, symbol, head, tail = _EDGE_STYLE[rel.kind]
        label_parts = [symbol]
        if rel.kind is RelationKind.CONDITION and rel.delay:
            label_parts.append(format_duration(rel.delay))
        if rel.kind is RelationKind.RESPONSE and rel.deadline is not INFINITY:
            label_parts.append(format_duration(rel.deadline))
        if rel.guard is not None:
            label_parts.append(f"[{format_expression(rel.guard)}]")
        attrs = [
            f"color={_quote(color)}",
            f"fontcolor={_quote(color)}",
            f"label={_quote(' '.join(label_parts))}",
            f"arrowhead={head}",
        ]
        if tail is not None:
            attrs.append(f"arrowtail={tail}")
            attrs.append("dir=both")
        lines.append(f"  {_quote(rel.source)} -> {_quote(rel.target)} "
                     f"[{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def _emit_cluster(graph: Graph, m: Marking, parent: str,
                  lines: list[str], indent: str) -> None:
    ev = graph.events[parent]
    lines.append(f"{indent}subgraph {_quote('cluster_' + parent)} {{")
    lines.append(f"{indent}  label={_quote(ev.action)};")
    lines.append(f"{indent}  style=rounded;")
    lines.append(f"{indent}  {_node(graph, m, parent)}")
    for child in graph.children.get(parent, ()):
        if child in graph.children:
            _emit_cluster(graph, m, child, lines, indent + "  ")
        else:
            lines.append(f"{indent}  {_node(graph, m, child)}")
    lines.append(f"{indent}}}")


def _node(graph: Graph, m: Marking, event_id: str) -> str:
    ev = graph.events[event_id]
    marks = ""
    if event_id in m.executed:
        marks += "✓ "
    if event_id in m.required:
        marks += "! "
    label = marks + ev.action
    if ev.roles:
        label = ", ".join(sorted(ev.roles)) + "\n" + label
    style = "rounded" if event_id in m.included else "rounded,dashed"
    return f"{_quote(event_id)} [label={_quote(label)}, style={_quote(style)}];"
