"""The versioned JSON graph document ("cellflow-graph/1").

This is the transport format between the analyzer and the viewer. It is
lossless with respect to the leveled graph plus the smell report:
from_json(to_json(graph, smells)) reconstructs both. Serialization is
byte-stable (sorted keys, fixed separators, trailing newline).
"""

from __future__ import annotations

import json
from typing import Any

from ..graph import (
    ApproxEdge,
    CellEdge,
    GraphNode,
    GraphWarning,
    LeveledGraph,
    ViewGraph,
    global_view,
    worksheet_view,
)
from ..smells import Smell

GRAPH_VERSION = "cellflow-graph/1"


def _edges_payload(view: ViewGraph) -> list[dict[str, Any]]:
    return [
        {"from": e.src, "to": e.dst, "multiplicity": e.multiplicity, "approximate": e.approximate}
        for e in view.edges
    ]


def document_dict(graph: LeveledGraph, smells: list[Smell]) -> dict[str, Any]:
    nodes = []
    for node in graph.nodes:
        entry: dict[str, Any] = {"id": node.id, "kind": node.kind, "label": node.label}
        if node.parent is not None:
            entry["parent"] = node.parent
        nodes.append(entry)

    cell_edges = [{"from": e.src, "to": e.dst, "approximate": False} for e in graph.cell_edges]
    cell_edges += [{"from": e.src, "to": e.dst, "approximate": True} for e in graph.approx_edges]

    worksheets = {
        node.label: {"edges": _edges_payload(worksheet_view(graph, node.label))}
        for node in graph.sheet_nodes()
    }

    return {
        "version": GRAPH_VERSION,
        "workbook_name": graph.workbook_name,
        "nodes": nodes,
        "cell_edges": cell_edges,
        "formula_cells": sorted(graph.formula_cells),
        "views": {
            "global": {"edges": _edges_payload(global_view(graph))},
            "worksheets": worksheets,
        },
        "smells": [
            {
                "kind": s.kind,
                "subjects": list(s.subjects),
                "metrics": s.metrics,
                "message": s.message,
            }
            for s in smells
        ],
        "warnings": [{"kind": w.kind, "message": w.message} for w in graph.warnings],
    }


def to_json(graph: LeveledGraph, smells: list[Smell]) -> str:
    return json.dumps(document_dict(graph, smells), sort_keys=True, indent=2) + "\n"


def from_json(text: str) -> tuple[LeveledGraph, list[Smell]]:
    """Rebuild the in-memory graph and smell list from a document."""
    doc = json.loads(text)
    version = doc.get("version")
    if version != GRAPH_VERSION:
        raise ValueError(f"unsupported graph document version: {version!r}")

    nodes = [
        GraphNode(n["id"], n["kind"], n["label"], n.get("parent")) for n in doc["nodes"]
    ]
    cell_edges = []
    approx_edges = []
    for e in doc["cell_edges"]:
        if e.get("approximate"):
            approx_edges.append(ApproxEdge(e["from"], e["to"]))
        else:
            cell_edges.append(CellEdge(e["from"], e["to"]))
    warnings = [GraphWarning(w["kind"], w["message"]) for w in doc.get("warnings", [])]
    graph = LeveledGraph(
        workbook_name=doc["workbook_name"],
        nodes=nodes,
        cell_edges=cell_edges,
        approx_edges=approx_edges,
        warnings=warnings,
        formula_cells=frozenset(doc.get("formula_cells", [])),
    )
    smells = [
        Smell(s["kind"], tuple(s["subjects"]), s["metrics"], s["message"])
        for s in doc.get("smells", [])
    ]
    return graph, smells
