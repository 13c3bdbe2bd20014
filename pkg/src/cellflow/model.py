"""In-memory workbook model.

A Workbook is immutable once loaded: worksheets hold a sparse map from
(row, col) to cell content, and absence of a key encodes an empty cell.
Sheet names are case-preserving but all lookups are case-insensitive.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterator, Mapping, Union

from .addresses import CellAddress
from .errors import DuplicateSheetName

ERROR_CODES = ("#DIV/0!", "#N/A", "#NAME?", "#NULL!", "#NUM!", "#REF!", "#VALUE!")


@dataclass(frozen=True)
class ErrorValue:
    """A spreadsheet error literal such as #REF! (distinct from text)."""

    code: str

    def __post_init__(self):
        if self.code not in ERROR_CODES:
            raise ValueError(f"unknown error code: {self.code!r}")

    def __str__(self):
        return self.code


Scalar = Union[int, float, bool, str, ErrorValue]


@dataclass(frozen=True)
class Constant:
    value: Scalar


@dataclass(frozen=True)
class Formula:
    """Formula source without the leading '=', plus the file's cached result if any."""

    text: str
    cached: Scalar | None = None

    def __post_init__(self):
        if not self.text:
            raise ValueError("formula text must be non-empty")


CellContent = Union[Constant, Formula]


@dataclass
class Worksheet:
    name: str
    cells: dict[tuple[int, int], CellContent] = field(default_factory=dict)
    hidden: bool = False

    def get(self, row: int, col: int) -> CellContent | None:
        return self.cells.get((row, col))

    def sorted_coords(self) -> list[tuple[int, int]]:
        return sorted(self.cells)

    def is_empty(self) -> bool:
        return not self.cells


@dataclass
class Workbook:
    name: str
    sheets: list[Worksheet] = field(default_factory=list)
    # defined names: casefolded name -> (display name, refers-to text)
    names: dict[str, tuple[str, str]] = field(default_factory=dict)

    def __post_init__(self):
        self._rebuild_index()

    def _rebuild_index(self):
        index: dict[str, int] = {}
        for i, ws in enumerate(self.sheets):
            key = ws.name.casefold()
            if key in index:
                raise DuplicateSheetName(ws.name)
            index[key] = i
        self._index = index

    def sheet(self, name: str) -> Worksheet | None:
        i = self._index.get(name.casefold())
        return self.sheets[i] if i is not None else None

    def resolve_sheet_name(self, name: str) -> str | None:
        """Map any spelling of a sheet name to its canonical (as-loaded) spelling."""
        ws = self.sheet(name)
        return ws.name if ws is not None else None

    def sheet_order(self) -> Mapping[str, int]:
        return {ws.name: i for i, ws in enumerate(self.sheets)}

    def iter_cells(self) -> Iterator[tuple[CellAddress, CellContent]]:
        for ws in self.sheets:
            for (row, col) in ws.sorted_coords():
                yield CellAddress(ws.name, col, row), ws.cells[(row, col)]

    def formula_cells(self) -> Iterator[tuple[CellAddress, Formula]]:
        for addr, content in self.iter_cells():
            if isinstance(content, Formula):
                yield addr, content
