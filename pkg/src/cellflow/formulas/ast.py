"""Formula AST nodes and the pretty-printer.

The printer emits the minimal parenthesization that reparses to an equal
tree, which makes print->parse a meaningful round-trip check of the
precedence table.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from typing import Union

from ..addresses import index_to_col

COMPARISON_OPS = ("=", "<>", "<", "<=", ">", ">=")
BINARY_OPS = COMPARISON_OPS + ("&", "+", "-", "*", "/", "^")
UNARY_OPS = ("-", "+", "%")


@dataclass(frozen=True)
class NumberLit:
    value: float


@dataclass(frozen=True)
class TextLit:
    value: str


@dataclass(frozen=True)
class BoolLit:
    value: bool


@dataclass(frozen=True)
class ErrorLit:
    code: str


@dataclass(frozen=True)
class CellRef:
    sheet: str | None
    col: int
    row: int
    col_abs: bool = False
    row_abs: bool = False


@dataclass(frozen=True)
class RangeRef:
    start: CellRef
    end: CellRef


@dataclass(frozen=True)
class FullSpanRef:
    """A whole-column (A:A) or whole-row (3:3) reference; parts kept verbatim."""

    sheet: str | None
    axis: str  # "col" | "row"
    first: str
    last: str


@dataclass(frozen=True)
class NameRef:
    name: str


@dataclass(frozen=True)
class FunctionCall:
    name: str  # uppercased
    args: tuple["FormulaAst", ...] = field(default_factory=tuple)


@dataclass(frozen=True)
class BinaryOp:
    op: str
    left: "FormulaAst"
    right: "FormulaAst"


@dataclass(frozen=True)
class UnaryOp:
    op: str  # '-' and '+' are prefix, '%' is postfix
    operand: "FormulaAst"


FormulaAst = Union[
    NumberLit,
    TextLit,
    BoolLit,
    ErrorLit,
    CellRef,
    RangeRef,
    FullSpanRef,
    NameRef,
    FunctionCall,
    BinaryOp,
    UnaryOp,
]

# Precedence levels, low to high. '^' groups right-to-left, every other
# binary operator left-to-right; prefix +/- bind tighter than '^'
# (a desktop spreadsheet evaluates =-2^2 to 4), postfix '%' tighter still.
PREC_CMP = 1
PREC_CONCAT = 2
PREC_ADD = 3
PREC_MUL = 4
PREC_POW = 5
PREC_UNARY = 6
PREC_POSTFIX = 7
PREC_ATOM = 8

_BINARY_PREC = {
    "=": PREC_CMP,
    "<>": PREC_CMP,
    "<": PREC_CMP,
    "<=": PREC_CMP,
    ">": PREC_CMP,
    ">=": PREC_CMP,
    "&": PREC_CONCAT,
    "+": PREC_ADD,
    "-": PREC_ADD,
    "*": PREC_MUL,
    "/": PREC_MUL,
    "^": PREC_POW,
}

_UNQUOTED_SHEET_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_.]*|\$?[A-Za-z]{1,3}\$?[0-9]+")


def _prec(node: FormulaAst) -> int:
    if isinstance(node, BinaryOp):
        return _BINARY_PREC[node.op]
    if isinstance(node, UnaryOp):
        return PREC_POSTFIX if node.op == "%" else PREC_UNARY
    return PREC_ATOM


def format_sheet_prefix(sheet: str | None) -> str:
    if sheet is None:
        return ""
    needs_quote = (
        _UNQUOTED_SHEET_RE.fullmatch(sheet) is None
        or sheet.upper() in ("TRUE", "FALSE")
        or sheet.startswith("[")
    )
    if needs_quote:
        return "'" + sheet.replace("'", "''") + "'!"
    return sheet + "!"


def _format_cell(ref: CellRef, with_sheet: bool = True) -> str:
    prefix = format_sheet_prefix(ref.sheet) if with_sheet else ""
    return (
        f"{prefix}"
        f"{'$' if ref.col_abs else ''}{index_to_col(ref.col)}"
        f"{'$' if ref.row_abs else ''}{ref.row}"
    )


def _format_number(value: float) -> str:
    if value == int(value) and abs(value) < 1e16:
        return str(int(value))
    return repr(value)


def print_formula(node: FormulaAst) -> str:
    """Render an AST back to formula text (without the leading '=')."""
    if isinstance(node, NumberLit):
        return _format_number(node.value)
    if isinstance(node, TextLit):
        return '"' + node.value.replace('"', '""') + '"'
    if isinstance(node, BoolLit):
        return "TRUE" if node.value else "FALSE"
    if isinstance(node, ErrorLit):
        return node.code
    if isinstance(node, CellRef):
        return _format_cell(node)
    if isinstance(node, RangeRef):
        return _format_cell(node.start) + ":" + _format_cell(node.end, with_sheet=False)
    if isinstance(node, FullSpanRef):
        return f"{format_sheet_prefix(node.sheet)}{node.first}:{node.last}"
    if isinstance(node, NameRef):
        return node.name
    if isinstance(node, FunctionCall):
        return node.name + "(" + ",".join(print_formula(a) for a in node.args) + ")"
    if isinstance(node, UnaryOp):
        if node.op == "%":
            inner = print_formula(node.operand)
            if _prec(node.operand) < PREC_POSTFIX:
                inner = f"({inner})"
            return inner + "%"
        inner = print_formula(node.operand)
        if _prec(node.operand) < PREC_UNARY:
            inner = f"({inner})"
        return node.op + inner
    if isinstance(node, BinaryOp):
        prec = _BINARY_PREC[node.op]
        right_assoc = node.op == "^"
        left = print_formula(node.left)
        lp = _prec(node.left)
        if lp < prec or (lp == prec and right_assoc):
            left = f"({left})"
        right = print_formula(node.right)
        rp = _prec(node.right)
        if rp < prec or (rp == prec and not right_assoc):
            right = f"({right})"
        return f"{left}{node.op}{right}"
    raise TypeError(f"not a formula node: {node!r}")
