"""Cell addressing: column letters, A1 notation, and the CellAddress value type."""

from __future__ import annotations

import re
from dataclasses import dataclass

MAX_COL = 16384  # column XFD
MAX_ROW = 1048576

_A1_RE = re.compile(r"^(\$?)([A-Za-z]{1,3})(\$?)([0-9]+)$")


def col_to_index(letters: str) -> int:
    """'A' -> 1, 'Z' -> 26, 'AA' -> 27, 'XFD' -> 16384."""
    n = 0
    for ch in letters.upper():
        if not "A" <= ch <= "Z":
            raise ValueError(f"bad column letters: {letters!r}")
        n = n * 26 + (ord(ch) - 64)
    if not 1 <= n <= MAX_COL:
        raise ValueError(f"column out of range: {letters!r}")
    return n


def index_to_col(n: int) -> str:
    if not 1 <= n <= MAX_COL:
        raise ValueError(f"column index out of range: {n}")
    s = ""
    while n:
        n, rem = divmod(n - 1, 26)
        s = chr(65 + rem) + s
    return s


def parse_a1(text: str) -> tuple[int, int]:
    """Parse an A1-style reference (optionally with $ markers) to (col, row)."""
    m = _A1_RE.match(text)
    if not m:
        raise ValueError(f"not an A1 reference: {text!r}")
    col = col_to_index(m.group(2))
    row = int(m.group(4))
    if not 1 <= row <= MAX_ROW:
        raise ValueError(f"row out of range: {text!r}")
    return col, row


def format_a1(col: int, row: int) -> str:
    return f"{index_to_col(col)}{row}"


@dataclass(frozen=True)
class CellAddress:
    """A cell position. Sheet names keep their spelling but compare case-insensitively."""

    sheet: str
    col: int
    row: int

    def __post_init__(self):
        if not 1 <= self.col <= MAX_COL:
            raise ValueError(f"column out of range: {self.col}")
        if not 1 <= self.row <= MAX_ROW:
            raise ValueError(f"row out of range: {self.row}")

    def __eq__(self, other):
        if not isinstance(other, CellAddress):
            return NotImplemented
        return (
            self.col == other.col
            and self.row == other.row
            and self.sheet.casefold() == other.sheet.casefold()
        )

    def __hash__(self):
        return hash((self.sheet.casefold(), self.col, self.row))

    @property
    def a1(self) -> str:
        return format_a1(self.col, self.row)

    def __str__(self):
        return f"{self.sheet}!{self.a1}"
