"""Serialization: DGML, DOT and the JSON graph document."""

from .dgml import to_dgml
from .dot import graph_to_dot, view_to_dot
from .jsondoc import GRAPH_VERSION, document_dict, from_json, to_json

__all__ = [
    "GRAPH_VERSION",
    "document_dict",
    "from_json",
    "graph_to_dot",
    "to_dgml",
    "to_json",
    "view_to_dot",
]
