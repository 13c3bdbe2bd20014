"""Formula tokenizing, parsing, pretty-printing and precedent extraction."""

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
    print_formula,
)
from .parser import parse
from .precedents import PrecedentSet, Unresolved, extract_precedents
from .tokens import Token, tokenize, translate_formula

__all__ = [
    "BinaryOp",
    "BoolLit",
    "CellRef",
    "ErrorLit",
    "FormulaAst",
    "FullSpanRef",
    "FunctionCall",
    "NameRef",
    "NumberLit",
    "PrecedentSet",
    "RangeRef",
    "TextLit",
    "Token",
    "UnaryOp",
    "Unresolved",
    "extract_precedents",
    "parse",
    "print_formula",
    "tokenize",
    "translate_formula",
]
