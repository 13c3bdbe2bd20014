"""End-to-end analysis: workbook -> leveled graph, in six steps.

1. classify cells, 2. detect data blocks, 3. compute border labels,
4. extract formula dependencies, 5. attach labels, 6. add the levels.
Formula parsing happens first because classification needs to know which
text constants are referenced; the produced graph is unaffected by the
reordering. A formula the grammar subset cannot parse keeps its node but
contributes no edges, and the failure is recorded as a warning.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .addresses import CellAddress
from .errors import FormulaError
from .formulas import extract_precedents, parse
from .formulas.precedents import PrecedentSet
from .graph import GraphWarning, LeveledGraph, build_graph, global_view
from .model import Workbook
from .smells import DEFAULT_CONFIG, Smell, SmellConfig, detect_all
from .structure import CellLabel, CellType, DataBlock, classify_cells, compute_labels, detect_blocks, name_blocks
from .xlsx import load_workbook


@dataclass
class Analysis:
    workbook: Workbook
    types: dict[CellAddress, CellType]
    blocks: dict[str, list[DataBlock]]
    labels: dict[CellAddress, CellLabel]
    precedents: dict[CellAddress, PrecedentSet]
    graph: LeveledGraph
    _smell_cache: dict = field(default_factory=dict, repr=False)

    def smells(self, config: SmellConfig = DEFAULT_CONFIG) -> list[Smell]:
        key = (config.heavy_abs_min, config.heavy_rel_min, config.report_empty_sheets)
        if key not in self._smell_cache:
            self._smell_cache[key] = detect_all(global_view(self.graph), self.workbook, config)
        return self._smell_cache[key]


def analyze(workbook: Workbook) -> Analysis:
    precedents: dict[CellAddress, PrecedentSet] = {}
    parse_warnings: list[GraphWarning] = []
    for addr, formula in workbook.formula_cells():
        try:
            ast = parse(formula.text)
        except FormulaError as exc:
            precedents[addr] = PrecedentSet()
            parse_warnings.append(
                GraphWarning("FormulaParseError", f"{addr}: {exc} in {formula.text!r}")
            )
            continue
        precedents[addr] = extract_precedents(ast, addr.sheet, workbook)

    types = classify_cells(workbook, precedents)

    blocks: dict[str, list[DataBlock]] = {}
    labels: dict[CellAddress, CellLabel] = {}
    for ws in workbook.sheets:
        sheet_blocks = name_blocks(detect_blocks(ws), types, ws)
        blocks[ws.name] = sheet_blocks
        for block in sheet_blocks:
            labels.update(compute_labels(block, types, ws))

    graph = build_graph(workbook, types, blocks, labels, precedents, parse_warnings)
    return Analysis(workbook, types, blocks, labels, precedents, graph)


def analyze_path(path: str) -> Analysis:
    return analyze(load_workbook(path))
