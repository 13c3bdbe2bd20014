"""Formula tokenizer.

Operates on the formula body without the leading '='. Tokens carry the
offset of their first character and the offset one past their last, so
callers can splice the original text (used for shared-formula expansion).

Token kinds:
    NUMBER STRING BOOL ERROR   literals (STRING/SHEET .text hold the
    IDENT CELL SHEET           unescaped value, everything else the raw text)
    LPAREN RPAREN COMMA COLON BANG OP
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from ..addresses import MAX_COL, MAX_ROW, col_to_index, index_to_col
from ..errors import LexError
from ..model import ERROR_CODES

NUMBER = "NUMBER"
STRING = "STRING"
BOOL = "BOOL"
ERROR = "ERROR"
IDENT = "IDENT"
CELL = "CELL"
SHEET = "SHEET"
LPAREN = "LPAREN"
RPAREN = "RPAREN"
COMMA = "COMMA"
COLON = "COLON"
BANG = "BANG"
OP = "OP"


@dataclass(frozen=True)
class Token:
    kind: str
    text: str
    offset: int
    end: int


_WS = " \t\r\n"
_CELL_RE = re.compile(r"(\$?)([A-Za-z]{1,3})(\$?)([0-9]+)")
_IDENT_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_.]*")
_NUMBER_RE = re.compile(r"(?:[0-9]+(?:\.[0-9]*)?|\.[0-9]+)(?:[eE][+-]?[0-9]+)?")
_COL_PART_RE = re.compile(r"\$[A-Za-z]{1,3}(?![A-Za-z0-9_.$])")
_ROW_PART_RE = re.compile(r"\$[0-9]+(?![0-9.])")
_BRACKET_SHEET_RE = re.compile(r"\[[^\]\[]*\][A-Za-z0-9_.]+")
_IDENT_CONT = set("ABCDEFGHIJKLMNOPQRSTUVWXYZabcdefghijklmnopqrstuvwxyz0123456789_.$")

_ERRORS_BY_LENGTH = sorted(ERROR_CODES, key=len, reverse=True)


def _next_nonspace(text: str, i: int) -> str:
    while i < len(text) and text[i] in _WS:
        i += 1
    return text[i] if i < len(text) else ""


def tokenize(text: str) -> list[Token]:
    tokens: list[Token] = []
    i = 0
    n = len(text)
    while i < n:
        ch = text[i]
        if ch in _WS:
            i += 1
            continue

        if ch == '"':
            value, end = _scan_quoted(text, i, '"')
            tokens.append(Token(STRING, value, i, end))
            i = end
            continue

        if ch == "'":
            value, end = _scan_quoted(text, i, "'")
            tokens.append(Token(SHEET, value, i, end))
            i = end
            continue

        if ch == "[":
            m = _BRACKET_SHEET_RE.match(text, i)
            if not m:
                raise LexError(i, "malformed external reference")
            tokens.append(Token(SHEET, m.group(0), i, m.end()))
            i = m.end()
            continue

        if ch == "#":
            upper = text[i:].upper()
            for code in _ERRORS_BY_LENGTH:
                if upper.startswith(code):
                    tokens.append(Token(ERROR, code, i, i + len(code)))
                    i += len(code)
                    break
            else:
                raise LexError(i, "unknown error literal")
            continue

        if ch.isdigit() or (ch == "." and i + 1 < n and text[i + 1].isdigit()):
            m = _NUMBER_RE.match(text, i)
            tokens.append(Token(NUMBER, m.group(0), i, m.end()))
            i = m.end()
            continue

        if ch.isalpha() or ch == "_" or ch == "$":
            tok = _scan_word(text, i)
            tokens.append(tok)
            i = tok.end
            continue

        if text.startswith(("<>", "<=", ">="), i):
            tokens.append(Token(OP, text[i : i + 2], i, i + 2))
            i += 2
            continue

        simple = {
            "(": LPAREN,
            ")": RPAREN,
            ",": COMMA,
            ":": COLON,
            "!": BANG,
        }
        if ch in simple:
            tokens.append(Token(simple[ch], ch, i, i + 1))
            i += 1
            continue
        if ch in "+-*/^&=<>%":
            tokens.append(Token(OP, ch, i, i + 1))
            i += 1
            continue

        raise LexError(i)
    return tokens


def _scan_quoted(text: str, start: int, quote: str) -> tuple[str, int]:
    """Scan a quoted region with doubled-quote escapes. Returns (value, end)."""
    parts: list[str] = []
    i = start + 1
    n = len(text)
    while i < n:
        ch = text[i]
        if ch == quote:
            if i + 1 < n and text[i + 1] == quote:
                parts.append(quote)
                i += 2
                continue
            return "".join(parts), i + 1
        parts.append(ch)
        i += 1
    raise LexError(start, "unterminated string" if quote == '"' else "unterminated sheet name")


def _scan_word(text: str, i: int) -> Token:
    # A1-style reference? Must end at a word boundary and must not be a
    # function name (i.e. not followed by an opening parenthesis).
    m = _CELL_RE.match(text, i)
    if m is not None:
        end = m.end()
        at_boundary = end >= len(text) or text[end] not in _IDENT_CONT
        if at_boundary and _next_nonspace(text, end) != "(":
            return Token(CELL, m.group(0), i, end)

    if text[i] == "$":
        # $-prefixed halves of full column/row spans ($A:$A, $3:$3).
        for pattern in (_COL_PART_RE, _ROW_PART_RE):
            m = pattern.match(text, i)
            if m is not None:
                return Token(IDENT, m.group(0), i, m.end())
        raise LexError(i, "unexpected '$'")

    m = _IDENT_RE.match(text, i)
    if m is None:
        raise LexError(i)
    word = m.group(0)
    if word.upper() in ("TRUE", "FALSE") and _next_nonspace(text, m.end()) != "(":
        return Token(BOOL, word.upper(), i, m.end())
    return Token(IDENT, word, i, m.end())


def translate_formula(text: str, drow: int, dcol: int) -> str:
    """Shift the relative cell references in a formula by a row/col offset.

    Used to expand OOXML shared formulas: slave cells store no text of
    their own, only the master's text translated by the cell offset.
    References shifted off the grid become #REF!.
    """
    if drow == 0 and dcol == 0:
        return text
    out: list[str] = []
    pos = 0
    for tok in tokenize(text):
        if tok.kind != CELL:
            continue
        m = _CELL_RE.fullmatch(tok.text)
        col_abs, letters, row_abs, digits = m.groups()
        col = col_to_index(letters)
        row = int(digits)
        if not col_abs:
            col += dcol
        if not row_abs:
            row += drow
        if 1 <= col <= MAX_COL and 1 <= row <= MAX_ROW:
            replacement = f"{col_abs}{index_to_col(col)}{row_abs}{row}"
        else:
            replacement = "#REF!"
        out.append(text[pos : tok.offset])
        out.append(replacement)
        pos = tok.end
    out.append(text[pos:])
    return "".join(out)
