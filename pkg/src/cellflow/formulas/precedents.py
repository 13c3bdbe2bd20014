"""Precedent extraction: which cells does a formula read from.

Unqualified references bind to the formula's home sheet. Range
references expand to every covered address; $ markers are irrelevant
for resolution. References that cannot be turned into concrete cell
addresses are reported in PrecedentSet.unresolved instead of failing:

    ExternalWorkbook   [Book2]Sheet1!A1 style references
    DefinedName        names missing from the workbook's name table or
                       not resolvable to one rectangular range
    FullColumnOrRow    A:A / 3:3 spans (expansion would be the whole grid)
    UnknownSheet       a sheet qualifier that names no worksheet
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field

from ..addresses import CellAddress
from ..model import Workbook
from ..errors import FormulaError
from .ast import (
    BinaryOp,
    CellRef,
    FormulaAst,
    FullSpanRef,
    FunctionCall,
    NameRef,
    RangeRef,
    UnaryOp,
    print_formula,
)
from .parser import parse

EXTERNAL_WORKBOOK = "ExternalWorkbook"
DEFINED_NAME = "DefinedName"
FULL_COLUMN_OR_ROW = "FullColumnOrRow"
UNKNOWN_SHEET = "UnknownSheet"

_SPAN_PART_RE = re.compile(r"\$?([A-Za-z]{1,3}|[0-9]+)")


@dataclass(frozen=True)
class Unresolved:
    reason: str
    text: str
    # For FullColumnOrRow on a known sheet: the canonical sheet name and the
    # covered index interval, so the graph builder can attach an approximate
    # block-level edge.
    sheet: str | None = None
    axis: str | None = None
    lo: int = 0
    hi: int = 0


@dataclass
class PrecedentSet:
    cells: set[CellAddress] = field(default_factory=set)
    unresolved: list[Unresolved] = field(default_factory=list)


def extract_precedents(ast: FormulaAst, home_sheet: str, workbook: Workbook) -> PrecedentSet:
    if workbook.sheet(home_sheet) is None:
        raise ValueError(f"home sheet {home_sheet!r} not in workbook")
    out = PrecedentSet()
    seen_unresolved: set[tuple[str, str]] = set()

    def record(entry: Unresolved):
        key = (entry.reason, entry.text)
        if key not in seen_unresolved:
            seen_unresolved.add(key)
            out.unresolved.append(entry)

    def resolve_sheet(qualifier: str | None, node: FormulaAst) -> str | None:
        sheet_text = qualifier if qualifier is not None else home_sheet
        if sheet_text.startswith("["):
            record(Unresolved(EXTERNAL_WORKBOOK, print_formula(node)))
            return None
        canonical = workbook.resolve_sheet_name(sheet_text)
        if canonical is None:
            record(Unresolved(UNKNOWN_SHEET, print_formula(node)))
            return None
        return canonical

    def walk(node: FormulaAst):
        if isinstance(node, CellRef):
            sheet = resolve_sheet(node.sheet, node)
            if sheet is not None:
                out.cells.add(CellAddress(sheet, node.col, node.row))
        elif isinstance(node, RangeRef):
            sheet = resolve_sheet(node.start.sheet, node)
            if sheet is not None:
                row_lo, row_hi = sorted((node.start.row, node.end.row))
                col_lo, col_hi = sorted((node.start.col, node.end.col))
                for row in range(row_lo, row_hi + 1):
                    for col in range(col_lo, col_hi + 1):
                        out.cells.add(CellAddress(sheet, col, row))
        elif isinstance(node, FullSpanRef):
            sheet = resolve_sheet(node.sheet, node)
            if sheet is not None:
                lo, hi = _span_interval(node)
                record(
                    Unresolved(
                        FULL_COLUMN_OR_ROW,
                        print_formula(node),
                        sheet=sheet,
                        axis=node.axis,
                        lo=lo,
                        hi=hi,
                    )
                )
        elif isinstance(node, NameRef):
            _resolve_name(node)
        elif isinstance(node, FunctionCall):
            for arg in node.args:
                walk(arg)
        elif isinstance(node, BinaryOp):
            walk(node.left)
            walk(node.right)
        elif isinstance(node, UnaryOp):
            walk(node.operand)
        # literals contribute nothing

    def _resolve_name(node: NameRef):
        entry = workbook.names.get(node.name.casefold())
        if entry is None:
            record(Unresolved(DEFINED_NAME, node.name))
            return
        _, refers_to = entry
        try:
            target = parse(refers_to)
        except FormulaError:
            record(Unresolved(DEFINED_NAME, node.name))
            return
        # Only a single sheet-qualified rectangle is accepted as a resolution.
        if isinstance(target, (CellRef, RangeRef)):
            qualifier = target.sheet if isinstance(target, CellRef) else target.start.sheet
            if qualifier is not None and not qualifier.startswith("["):
                if workbook.resolve_sheet_name(qualifier) is not None:
                    walk(target)
                    return
        record(Unresolved(DEFINED_NAME, node.name))

    walk(ast)
    return out


def _span_interval(node: FullSpanRef) -> tuple[int, int]:
    values = []
    for part in (node.first, node.last):
        body = _SPAN_PART_RE.fullmatch(part).group(1)
        if node.axis == "col":
            n = 0
            for ch in body.upper():
                n = n * 26 + (ord(ch) - 64)
            values.append(n)
        else:
            values.append(int(body))
    return min(values), max(values)
