"""Recursive-descent formula parser.

Grammar subset: A1-style references only. R1C1 references, array
literals, intersection/union reference operators and structured table
references are rejected. Full-column (A:A) and full-row (3:3) spans are
accepted and parsed into FullSpanRef nodes. A cell-shaped word whose
column or row lies beyond the grid (e.g. ZZZ1) is treated as a name,
matching spreadsheet behaviour.
"""

from __future__ import annotations

import re

from ..addresses import MAX_COL, MAX_ROW
from ..errors import ParseError
from . import tokens as T
from .ast import (
    BinaryOp,
    BoolLit,
    CellRef,
    ErrorLit,
    FormulaAst,
    FullSpanRef,
    FunctionCall,
    NameRef,
    NumberLit,
    RangeRef,
    TextLit,
    UnaryOp,
)

_CELL_PARTS_RE = re.compile(r"(\$?)([A-Za-z]{1,3})(\$?)([0-9]+)")
_COL_SPAN_RE = re.compile(r"(\$?)([A-Za-z]{1,3})")
_R1C1_RE = re.compile(r"[Rr][0-9]*[Cc][0-9]*")

_COMPARISONS = {"=", "<>", "<", "<=", ">", ">="}


def _raw_col_number(letters: str) -> int:
    """Column letters to index with no bounds check ('ZZZ' -> 18278)."""
    n = 0
    for ch in letters.upper():
        n = n * 26 + (ord(ch) - 64)
    return n


def parse(text: str) -> FormulaAst:
    """Parse a formula body (without the leading '=') into an AST."""
    toks = T.tokenize(text)
    parser = _Parser(toks, len(text))
    node = parser.parse_expression()
    tok = parser.peek()
    if tok is not None:
        raise ParseError(tok.offset, "expected end of formula")
    return node


class _Parser:
    def __init__(self, toks: list[T.Token], text_len: int):
        self.toks = toks
        self.pos = 0
        self.text_len = text_len

    def peek(self, ahead: int = 0) -> T.Token | None:
        i = self.pos + ahead
        return self.toks[i] if i < len(self.toks) else None

    def advance(self) -> T.Token:
        tok = self.toks[self.pos]
        self.pos += 1
        return tok

    def expect(self, kind: str, what: str) -> T.Token:
        tok = self.peek()
        if tok is None:
            raise ParseError(self.text_len, f"expected {what}")
        if tok.kind != kind:
            raise ParseError(tok.offset, f"expected {what}")
        return self.advance()

    def _fail(self, what: str):
        tok = self.peek()
        offset = tok.offset if tok is not None else self.text_len
        raise ParseError(offset, what)

    # precedence cascade, low to high

    def parse_expression(self) -> FormulaAst:
        node = self.parse_concat()
        while (tok := self.peek()) is not None and tok.kind == T.OP and tok.text in _COMPARISONS:
            self.advance()
            node = BinaryOp(tok.text, node, self.parse_concat())
        return node

    def parse_concat(self) -> FormulaAst:
        node = self.parse_additive()
        while (tok := self.peek()) is not None and tok.kind == T.OP and tok.text == "&":
            self.advance()
            node = BinaryOp("&", node, self.parse_additive())
        return node

    def parse_additive(self) -> FormulaAst:
        node = self.parse_multiplicative()
        while (tok := self.peek()) is not None and tok.kind == T.OP and tok.text in ("+", "-"):
            self.advance()
            node = BinaryOp(tok.text, node, self.parse_multiplicative())
        return node

    def parse_multiplicative(self) -> FormulaAst:
        node = self.parse_power()
        while (tok := self.peek()) is not None and tok.kind == T.OP and tok.text in ("*", "/"):
            self.advance()
            node = BinaryOp(tok.text, node, self.parse_power())
        return node

    def parse_power(self) -> FormulaAst:
        node = self.parse_unary()
        tok = self.peek()
        if tok is not None and tok.kind == T.OP and tok.text == "^":
            self.advance()
            return BinaryOp("^", node, self.parse_power())  # right-associative
        return node

    def parse_unary(self) -> FormulaAst:
        tok = self.peek()
        if tok is not None and tok.kind == T.OP and tok.text in ("-", "+"):
            self.advance()
            return UnaryOp(tok.text, self.parse_unary())
        return self.parse_postfix()

    def parse_postfix(self) -> FormulaAst:
        node = self.parse_primary()
        while (tok := self.peek()) is not None and tok.kind == T.OP and tok.text == "%":
            self.advance()
            node = UnaryOp("%", node)
        return node

    # primaries and references

    def parse_primary(self) -> FormulaAst:
        tok = self.peek()
        if tok is None:
            raise ParseError(self.text_len, "expected expression")

        if tok.kind == T.NUMBER:
            if self._at_row_span():
                return self._parse_full_span(None)
            self.advance()
            return NumberLit(float(tok.text))
        if tok.kind == T.STRING:
            self.advance()
            return TextLit(tok.text)
        if tok.kind == T.BOOL:
            self.advance()
            return BoolLit(tok.text == "TRUE")
        if tok.kind == T.ERROR:
            self.advance()
            return ErrorLit(tok.text)
        if tok.kind == T.LPAREN:
            self.advance()
            node = self.parse_expression()
            self.expect(T.RPAREN, "')'")
            return node
        if tok.kind == T.SHEET:
            self.advance()
            self.expect(T.BANG, "'!' after sheet name")
            return self._parse_reference_body(tok.text)
        if tok.kind == T.CELL:
            nxt = self.peek(1)
            if nxt is not None and nxt.kind == T.BANG:
                if "$" in tok.text:
                    raise ParseError(tok.offset, "invalid sheet name")
                self.advance()
                self.advance()
                return self._parse_reference_body(tok.text)
            return self._parse_cell_or_range(None)
        if tok.kind == T.IDENT:
            nxt = self.peek(1)
            if nxt is not None and nxt.kind == T.BANG:
                if "$" in tok.text:
                    raise ParseError(tok.offset, "invalid sheet name")
                self.advance()
                self.advance()
                return self._parse_reference_body(tok.text)
            if nxt is not None and nxt.kind == T.LPAREN:
                return self._parse_call()
            if self._at_col_span():
                return self._parse_full_span(None)
            if self._at_row_span():
                return self._parse_full_span(None)
            if tok.text.startswith("$"):
                raise ParseError(tok.offset, "unexpected '$'")
            if _R1C1_RE.fullmatch(tok.text):
                raise ParseError(tok.offset, "R1C1-style references are not supported")
            self.advance()
            return NameRef(tok.text)
        raise ParseError(tok.offset, "expected expression")

    def _parse_call(self) -> FormulaAst:
        name_tok = self.advance()
        self.expect(T.LPAREN, "'('")
        args: list[FormulaAst] = []
        tok = self.peek()
        if tok is not None and tok.kind == T.RPAREN:
            self.advance()
            return FunctionCall(name_tok.text.upper(), ())
        args.append(self.parse_expression())
        while (tok := self.peek()) is not None and tok.kind == T.COMMA:
            self.advance()
            args.append(self.parse_expression())
        self.expect(T.RPAREN, "')' or ','")
        return FunctionCall(name_tok.text.upper(), tuple(args))

    def _parse_reference_body(self, sheet: str) -> FormulaAst:
        tok = self.peek()
        if tok is None:
            raise ParseError(self.text_len, "expected reference after '!'")
        if tok.kind == T.CELL:
            return self._parse_cell_or_range(sheet)
        if self._at_col_span() or self._at_row_span():
            return self._parse_full_span(sheet)
        raise ParseError(tok.offset, "expected cell or range reference after '!'")

    def _parse_cell_or_range(self, sheet: str | None) -> FormulaAst:
        tok = self.advance()
        start = self._cell_from_token(tok, sheet)
        nxt = self.peek()
        if nxt is not None and nxt.kind == T.COLON:
            after = self.peek(1)
            if after is None or after.kind != T.CELL:
                # A bare cell followed by ':' only forms a range with a
                # second cell; partial spans like A1:B are out of the subset.
                where = after.offset if after is not None else self.text_len
                raise ParseError(where, "expected cell reference after ':'")
            self.advance()
            end_tok = self.advance()
            if isinstance(start, NameRef):
                raise ParseError(tok.offset, "range endpoint out of grid bounds")
            end = self._cell_from_token(end_tok, sheet)
            if isinstance(end, NameRef):
                raise ParseError(end_tok.offset, "range endpoint out of grid bounds")
            return RangeRef(start, end)
        return start

    def _cell_from_token(self, tok: T.Token, sheet: str | None) -> CellRef | NameRef:
        m = _CELL_PARTS_RE.fullmatch(tok.text)
        col_abs, letters, row_abs, digits = m.groups()
        col = _raw_col_number(letters)
        row = int(digits)
        if not (1 <= col <= MAX_COL and 1 <= row <= MAX_ROW):
            # Beyond the grid this word is a name, unless that reading is
            # impossible ($ markers or an explicit sheet qualifier).
            if col_abs or row_abs or sheet is not None:
                raise ParseError(tok.offset, "cell reference out of grid bounds")
            return NameRef(tok.text)
        return CellRef(sheet, col, row, col_abs == "$", row_abs == "$")

    def _at_col_span(self) -> bool:
        return self._span_ahead(self._is_col_part)

    def _at_row_span(self) -> bool:
        return self._span_ahead(self._is_row_part)

    def _span_ahead(self, part_ok) -> bool:
        tok, colon, after = self.peek(), self.peek(1), self.peek(2)
        return (
            tok is not None
            and part_ok(tok)
            and colon is not None
            and colon.kind == T.COLON
            and after is not None
            and part_ok(after)
        )

    @staticmethod
    def _is_col_part(tok: T.Token) -> bool:
        if tok.kind != T.IDENT:
            return False
        m = _COL_SPAN_RE.fullmatch(tok.text)
        return m is not None and _raw_col_number(m.group(2)) <= MAX_COL

    @staticmethod
    def _is_row_part(tok: T.Token) -> bool:
        if tok.kind == T.NUMBER:
            text = tok.text
        elif tok.kind == T.IDENT and tok.text.startswith("$"):
            text = tok.text[1:]
        else:
            return False
        return text.isdigit() and 1 <= int(text) <= MAX_ROW

    def _parse_full_span(self, sheet: str | None) -> FullSpanRef:
        first = self.advance()
        self.advance()  # colon
        last = self.advance()
        axis = "col" if self._is_col_part(first) else "row"
        return FullSpanRef(sheet, axis, first.text, last.text)
