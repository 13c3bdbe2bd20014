"""Structural analysis of worksheets: cell classification, data-block
detection and border-label computation.

Cell classification: formula cells are Formula; a text constant that no
formula references is a Label (an annotation); every other constant
(numbers, booleans, error literals, and text that *is* referenced) is
Data. Absent cells are Empty. Classification therefore runs after
precedent extraction.

Data blocks are 8-connected components of non-empty cells whose bounding
rectangles are merged transitively until no two rectangles touch or
overlap, so every block is separated from the others by at least one
empty cell in every direction.
"""

from __future__ import annotations

from dataclasses import dataclass, replace
from enum import Enum
from typing import Mapping

from . import kernels
from .addresses import MAX_COL, CellAddress, format_a1
from .formulas.precedents import PrecedentSet
from .model import Constant, Formula, Workbook, Worksheet

_STRIDE = MAX_COL + 2  # grid key encoding: key = row * _STRIDE + col


class CellType(Enum):
    DATA = "Data"
    FORMULA = "Formula"
    LABEL = "Label"
    EMPTY = "Empty"


def classify_cells(
    workbook: Workbook, precedents: Mapping[CellAddress, PrecedentSet]
) -> dict[CellAddress, CellType]:
    """Classify every stored cell. Absent addresses are implicitly EMPTY."""
    referenced: set[CellAddress] = set()
    for pset in precedents.values():
        referenced.update(pset.cells)

    types: dict[CellAddress, CellType] = {}
    for addr, content in workbook.iter_cells():
        if isinstance(content, Formula):
            types[addr] = CellType.FORMULA
        elif isinstance(content, Constant) and isinstance(content.value, str):
            types[addr] = CellType.DATA if addr in referenced else CellType.LABEL
        else:
            types[addr] = CellType.DATA
    return types


def cell_type(types: Mapping[CellAddress, CellType], addr: CellAddress) -> CellType:
    return types.get(addr, CellType.EMPTY)


@dataclass(frozen=True)
class DataBlock:
    sheet: str
    top: int
    left: int
    bottom: int
    right: int
    members: frozenset[tuple[int, int]]  # (row, col) of non-empty cells
    name: str = ""

    @property
    def id(self) -> str:
        return (
            f"{self.sheet}!{format_a1(self.left, self.top)}:"
            f"{format_a1(self.right, self.bottom)}"
        )

    def contains(self, row: int, col: int) -> bool:
        return self.top <= row <= self.bottom and self.left <= col <= self.right


def detect_blocks(worksheet: Worksheet) -> list[DataBlock]:
    """Partition the sheet's non-empty cells into data blocks."""
    coords = worksheet.sorted_coords()
    if not coords:
        return []
    keys = [row * _STRIDE + col for row, col in coords]
    labels = kernels.grid_component_labels(keys, _STRIDE)

    groups: dict[int, list[tuple[int, int]]] = {}
    for coord, label in zip(coords, labels):
        groups.setdefault(label, []).append(coord)

    rects = []
    for label in sorted(groups):
        members = groups[label]
        rows = [r for r, _ in members]
        cols = [c for _, c in members]
        rects.append([min(rows), min(cols), max(rows), max(cols), members])

    _merge_touching(rects)

    blocks = [
        DataBlock(
            sheet=worksheet.name,
            top=top,
            left=left,
            bottom=bottom,
            right=right,
            members=frozenset(members),
        )
        for top, left, bottom, right, members in rects
    ]
    blocks.sort(key=lambda b: (b.top, b.left))
    return blocks


def _merge_touching(rects: list[list]) -> None:
    """Merge rectangles that overlap or are 8-adjacent, to a fixpoint."""
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(rects):
            j = i + 1
            while j < len(rects):
                a, b = rects[i], rects[j]
                touching = not (
                    a[1] > b[3] + 1 or b[1] > a[3] + 1 or a[0] > b[2] + 1 or b[0] > a[2] + 1
                )
                if touching:
                    a[0] = min(a[0], b[0])
                    a[1] = min(a[1], b[1])
                    a[2] = max(a[2], b[2])
                    a[3] = max(a[3], b[3])
                    a[4].extend(b[4])
                    del rects[j]
                    changed = True
                else:
                    j += 1
            i += 1


@dataclass(frozen=True)
class CellLabel:
    row_label: str | None
    col_label: str | None
    display: str


def _label_text(worksheet: Worksheet, row: int, col: int) -> str:
    content = worksheet.get(row, col)
    assert isinstance(content, Constant) and isinstance(content.value, str)
    return content.value


def compute_labels(
    block: DataBlock, types: Mapping[CellAddress, CellType], worksheet: Worksheet
) -> dict[CellAddress, CellLabel]:
    """Derive display labels for the block's Data and Formula cells.

    row_label is the nearest Label strictly left of the cell in its row,
    col_label the nearest Label strictly above in its column; both
    searches stop at the block border. Display text is
    "<col_label> <row_label>", the single label when only one exists,
    and the bare A1 address when neither does.
    """
    is_label = {}
    for (row, col) in block.members:
        addr = CellAddress(block.sheet, col, row)
        is_label[(row, col)] = types.get(addr) == CellType.LABEL

    out: dict[CellAddress, CellLabel] = {}
    for (row, col) in sorted(block.members):
        addr = CellAddress(block.sheet, col, row)
        if types.get(addr) not in (CellType.DATA, CellType.FORMULA):
            continue
        row_label = None
        for c in range(col - 1, block.left - 1, -1):
            if is_label.get((row, c)):
                row_label = _label_text(worksheet, row, c)
                break
        col_label = None
        for r in range(row - 1, block.top - 1, -1):
            if is_label.get((r, col)):
                col_label = _label_text(worksheet, r, col)
                break
        if col_label and row_label:
            display = f"{col_label} {row_label}"
        else:
            display = col_label or row_label or format_a1(col, row)
        out[addr] = CellLabel(row_label, col_label, display)
    return out


def name_blocks(
    blocks: list[DataBlock], types: Mapping[CellAddress, CellType], worksheet: Worksheet
) -> list[DataBlock]:
    """Assign display names: the top-left-most Label cell's text, else the id."""
    named = []
    for block in blocks:
        label_coords = sorted(
            (row, col)
            for (row, col) in block.members
            if types.get(CellAddress(block.sheet, col, row)) == CellType.LABEL
        )
        if label_coords:
            row, col = label_coords[0]
            named.append(replace(block, name=_label_text(worksheet, row, col)))
        else:
            named.append(replace(block, name=block.id))
    return named
