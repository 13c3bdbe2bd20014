"""cellflow: extract leveled dataflow diagrams from spreadsheets.

A workbook (an .xlsx archive or a JSON fixture) is analyzed into a
hierarchical dataflow graph - workbook > worksheet > data block > cell -
with cell-level dependency edges. The graph projects into three views
(global, worksheet, formula), is checked for structure smells, and is
serialized to DGML, DOT, or the JSON document the companion viewer
consumes.
"""

from .addresses import CellAddress
from .errors import CellflowError
from .fixture import load_fixture
from .graph import LeveledGraph, ViewGraph, formula_view, global_view, topological_ranks, worksheet_view
from .model import Constant, ErrorValue, Formula, Workbook, Worksheet
from .pipeline import Analysis, analyze, analyze_path
from .smells import Smell, SmellConfig, detect_all
from .structure import CellType, DataBlock
from .xlsx import load_workbook, load_xlsx

__version__ = "0.1.0"

__all__ = [
    "Analysis",
    "CellAddress",
    "CellType",
    "CellflowError",
    "Constant",
    "DataBlock",
    "ErrorValue",
    "Formula",
    "LeveledGraph",
    "Smell",
    "SmellConfig",
    "ViewGraph",
    "Workbook",
    "Worksheet",
    "analyze",
    "analyze_path",
    "detect_all",
    "formula_view",
    "global_view",
    "load_fixture",
    "load_workbook",
    "load_xlsx",
    "topological_ranks",
    "worksheet_view",
]
