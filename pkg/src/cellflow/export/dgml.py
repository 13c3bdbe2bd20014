"""DGML serialization (http://schemas.microsoft.com/vs/2009/dgml).

Structural subset only: Nodes, Links, Contains categories and Group
state. The workbook itself is represented by the DirectedGraph root
rather than an extra node, so the emitted containment links form a
forest with one tree per worksheet. Output is canonical: fixed attribute
order, stable node order, UTF-8 with XML escaping.
"""

from __future__ import annotations

from typing import Mapping

from ..graph import KIND_BLOCK, KIND_WORKBOOK, KIND_WORKSHEET, LeveledGraph

_DEFAULT_GROUP = {KIND_WORKSHEET: "Expanded", KIND_BLOCK: "Collapsed"}


def _escape(value: str) -> str:
    return (
        value.replace("&", "&amp;")
        .replace("<", "&lt;")
        .replace(">", "&gt;")
        .replace('"', "&quot;")
    )


def to_dgml(graph: LeveledGraph, view_hints: Mapping[str, str] | None = None) -> str:
    """Serialize the leveled graph. view_hints overrides per-node Group state
    (node id -> "Expanded" | "Collapsed")."""
    hints = view_hints or {}
    emitted = [n for n in graph.nodes if n.kind != KIND_WORKBOOK]
    emitted_ids = {n.id for n in emitted}

    lines = [
        '<?xml version="1.0" encoding="utf-8"?>',
        '<DirectedGraph xmlns="http://schemas.microsoft.com/vs/2009/dgml">',
        "  <Nodes>",
    ]
    for node in emitted:
        attrs = f'Id="{_escape(node.id)}" Label="{_escape(node.label)}"'
        group = hints.get(node.id, _DEFAULT_GROUP.get(node.kind))
        if group is not None:
            attrs += f' Group="{_escape(group)}"'
        lines.append(f"    <Node {attrs} />")
    lines.append("  </Nodes>")

    lines.append("  <Links>")
    for node in emitted:
        if node.parent in emitted_ids:
            lines.append(
                f'    <Link Source="{_escape(node.parent)}" Target="{_escape(node.id)}"'
                ' Category="Contains" />'
            )
    for edge in graph.cell_edges:
        lines.append(f'    <Link Source="{_escape(edge.src)}" Target="{_escape(edge.dst)}" />')
    for edge in graph.approx_edges:
        lines.append(
            f'    <Link Source="{_escape(edge.src)}" Target="{_escape(edge.dst)}"'
            ' StrokeDashArray="2 2" />'
        )
    lines.append("  </Links>")
    lines.append("</DirectedGraph>")
    return "\n".join(lines) + "\n"
