"""Graphviz DOT emitters.

View edges are drawn with penwidth 1 + ln(multiplicity) so heavy flows
stay legible; pass scale="linear" for penwidth = multiplicity. Labels
are ASCII-escaped for portability, ordering is deterministic.
"""

from __future__ import annotations

import math

from ..graph import KIND_BLOCK, KIND_CELL, KIND_WORKSHEET, LeveledGraph, ViewGraph


def _quote(value: str) -> str:
    escaped = value.replace("\\", "\\\\").replace('"', '\\"')
    return '"' + escaped.encode("ascii", "backslashreplace").decode("ascii") + '"'


def _penwidth(multiplicity: int, scale: str) -> str:
    if scale == "linear":
        width = float(multiplicity)
    else:
        width = 1.0 + math.log(multiplicity)
    return f"{width:.4f}"


def view_to_dot(view: ViewGraph, scale: str = "log") -> str:
    name = "_".join(str(part) for part in view.level)
    lines = [f"digraph {_quote(name)} {{", "  rankdir=LR;", "  node [shape=box];"]
    for node in view.nodes:
        attrs = [f"label={_quote(node.label)}"]
        if node.kind == KIND_WORKSHEET:
            attrs.append("style=rounded")
        if node.smell_badges:
            attrs.append(f"tooltip={_quote(', '.join(node.smell_badges))}")
        lines.append(f"  {_quote(node.id)} [{', '.join(attrs)}];")
    for edge in view.edges:
        attrs = [f"penwidth={_penwidth(edge.multiplicity, scale)}"]
        if edge.approximate:
            attrs.append("style=dashed")
        lines.append(f"  {_quote(edge.src)} -> {_quote(edge.dst)} [{', '.join(attrs)}];")
    lines.append("}")
    return "\n".join(lines) + "\n"


def graph_to_dot(graph: LeveledGraph, scale: str = "log") -> str:
    """Whole-graph DOT: one cluster per worksheet, nested clusters per block,
    cell-level edges. Approximate block edges use cluster heads/tails."""
    lines = [
        f"digraph {_quote(graph.workbook_name)} {{",
        "  compound=true;",
        "  rankdir=LR;",
        "  node [shape=box];",
    ]
    cluster_index: dict[str, str] = {}
    counter = 0
    anchor: dict[str, str] = {}  # block node id -> a cell node id inside it

    def cluster_name(node_id: str) -> str:
        nonlocal counter
        if node_id not in cluster_index:
            cluster_index[node_id] = f"cluster_{counter}"
            counter += 1
        return cluster_index[node_id]

    sheets = [n for n in graph.nodes if n.kind == KIND_WORKSHEET]
    for sheet in sheets:
        lines.append(f"  subgraph {cluster_name(sheet.id)} {{")
        lines.append(f"    label={_quote(sheet.label)};")
        for block in graph.nodes:
            if block.kind != KIND_BLOCK or block.parent != sheet.id:
                continue
            lines.append(f"    subgraph {cluster_name(block.id)} {{")
            lines.append(f"      label={_quote(block.label)};")
            for cell in graph.nodes:
                if cell.kind == KIND_CELL and cell.parent == block.id:
                    anchor.setdefault(block.id, cell.id)
                    lines.append(f"      {_quote(cell.id)} [label={_quote(cell.label)}];")
            lines.append("    }")
        lines.append("  }")

    for edge in graph.cell_edges:
        lines.append(f"  {_quote(edge.src)} -> {_quote(edge.dst)} [penwidth={_penwidth(1, scale)}];")
    for edge in graph.approx_edges:
        src_anchor, dst_anchor = anchor.get(edge.src), anchor.get(edge.dst)
        if src_anchor is None or dst_anchor is None:
            continue  # a block of labels only: nothing to attach to
        lines.append(
            f"  {_quote(src_anchor)} -> {_quote(dst_anchor)} "
            f"[style=dashed, ltail={cluster_name(edge.src)}, lhead={cluster_name(edge.dst)}];"
        )
    lines.append("}")
    return "\n".join(lines) + "\n"
