"""Shared test utilities: quick workbook construction and fixture paths."""

from __future__ import annotations

from pathlib import Path

from cellflow.addresses import parse_a1
from cellflow.model import ERROR_CODES, Constant, ErrorValue, Formula, Workbook, Worksheet

FIXTURES = Path(__file__).resolve().parent.parent / "fixtures"
GOLDEN = Path(__file__).resolve().parent / "golden"
DOCS = Path(__file__).resolve().parent.parent / "docs"


def make_sheet(name: str, cells: dict[str, object], hidden: bool = False) -> Worksheet:
    """Cell values: "=..." builds a formula, an error-code string an error
    constant, everything else a plain constant."""
    out = {}
    for a1, value in cells.items():
        col, row = parse_a1(a1)
        if isinstance(value, str) and value.startswith("="):
            out[(row, col)] = Formula(value[1:])
        elif isinstance(value, str) and value in ERROR_CODES:
            out[(row, col)] = Constant(ErrorValue(value))
        else:
            out[(row, col)] = Constant(value)
    return Worksheet(name=name, cells=out, hidden=hidden)


def make_workbook(
    sheets: dict[str, dict[str, object]],
    name: str = "book",
    names: dict[str, str] | None = None,
) -> Workbook:
    return Workbook(
        name=name,
        sheets=[make_sheet(sheet_name, cells) for sheet_name, cells in sheets.items()],
        names={k.casefold(): (k, v) for k, v in (names or {}).items()},
    )
