"""JSON fixture workbooks: a binary-free input format for tests and CI.

Schema (version "cellflow-fixture/1", the version field is optional):

    {
      "version": "cellflow-fixture/1",
      "name": "<workbook name>",
      "sheets": [
        {"name": "<sheet>", "hidden": false,
         "cells": {"A1": {"v": 5}, "B1": {"f": "A1*2", "v": 10}}}
      ],
      "names": {"<defined name>": "<refers-to text, e.g. Sheet1!$A$1:$B$2>"}
    }

Cell values ("v") are numbers, strings or booleans; a string matching a
spreadsheet error code (e.g. "#REF!") is ingested as an error constant,
mirroring how typing it into a sheet would behave. "f" is the formula
source without the leading '='.
"""

from __future__ import annotations

import json
from typing import Any

from .addresses import parse_a1
from .errors import DuplicateCellAddress, DuplicateSheetName, SchemaViolation
from .model import ERROR_CODES, Constant, ErrorValue, Formula, Scalar, Workbook, Worksheet

FIXTURE_VERSION = "cellflow-fixture/1"


def load_fixture(path: str) -> Workbook:
    """Load a fixture JSON file into a Workbook."""
    with open(path, "rb") as f:
        data = f.read()
    return parse_fixture(data.decode("utf-8"))


class _DupeKeyGuard:
    """object_pairs_hook that keeps duplicate keys visible for later checks."""

    def __call__(self, pairs):
        seen = set()
        dupes = []
        for key, _ in pairs:
            if key in seen:
                dupes.append(key)
            seen.add(key)
        obj = dict(pairs)
        if dupes:
            obj["__duplicate_keys__"] = dupes
        return obj


def parse_fixture(text: str) -> Workbook:
    try:
        doc = json.loads(text, object_pairs_hook=_DupeKeyGuard())
    except json.JSONDecodeError as exc:
        raise SchemaViolation("", f"invalid JSON: {exc}") from exc
    return _workbook_from_doc(doc)


def _expect(cond: bool, pointer: str, detail: str):
    if not cond:
        raise SchemaViolation(pointer, detail)


def _scalar_from_value(value: Any, pointer: str) -> Scalar:
    if isinstance(value, bool):
        return value
    if isinstance(value, (int, float)):
        return value
    if isinstance(value, str):
        if value in ERROR_CODES:
            return ErrorValue(value)
        return value
    raise SchemaViolation(pointer, f"cell value must be number, string or boolean, got {type(value).__name__}")


def _workbook_from_doc(doc: Any) -> Workbook:
    _expect(isinstance(doc, dict), "", "top-level value must be an object")
    version = doc.get("version")
    if version is not None:
        _expect(version == FIXTURE_VERSION, "/version", f"unsupported version {version!r}")
    _expect("name" in doc, "/name", "missing required field")
    _expect(isinstance(doc["name"], str), "/name", "must be a string")
    _expect("sheets" in doc, "/sheets", "missing required field")
    _expect(isinstance(doc["sheets"], list), "/sheets", "must be an array")

    allowed_top = {"version", "name", "sheets", "names", "__duplicate_keys__"}
    for key in doc:
        _expect(key in allowed_top, f"/{key}", "unknown field")

    sheets: list[Worksheet] = []
    seen_names: set[str] = set()
    for i, sheet_doc in enumerate(doc["sheets"]):
        ptr = f"/sheets/{i}"
        _expect(isinstance(sheet_doc, dict), ptr, "must be an object")
        _expect("name" in sheet_doc, f"{ptr}/name", "missing required field")
        name = sheet_doc["name"]
        _expect(isinstance(name, str) and name != "", f"{ptr}/name", "must be a non-empty string")
        if name.casefold() in seen_names:
            raise DuplicateSheetName(name)
        seen_names.add(name.casefold())

        for key in sheet_doc:
            _expect(key in {"name", "cells", "hidden", "__duplicate_keys__"}, f"{ptr}/{key}", "unknown field")
        hidden = sheet_doc.get("hidden", False)
        _expect(isinstance(hidden, bool), f"{ptr}/hidden", "must be a boolean")

        cells_doc = sheet_doc.get("cells", {})
        _expect(isinstance(cells_doc, dict), f"{ptr}/cells", "must be an object")
        dupes = cells_doc.pop("__duplicate_keys__", None)
        if dupes:
            raise DuplicateCellAddress(name, dupes[0])

        cells: dict[tuple[int, int], Any] = {}
        for a1, cell_doc in cells_doc.items():
            cptr = f"{ptr}/cells/{a1}"
            _expect(a1 == a1.upper(), cptr, "addresses must use uppercase column letters")
            try:
                col, row = parse_a1(a1)
            except ValueError as exc:
                raise SchemaViolation(cptr, str(exc)) from exc
            _expect(isinstance(cell_doc, dict), cptr, "cell must be an object")
            keys = set(cell_doc) - {"__duplicate_keys__"}
            _expect(keys <= {"v", "f"}, cptr, f"unknown cell fields: {sorted(keys - {'v', 'f'})}")
            _expect(bool(keys), cptr, "cell must carry 'v' and/or 'f'")
            if "f" in cell_doc:
                ftext = cell_doc["f"]
                _expect(isinstance(ftext, str) and ftext != "", f"{cptr}/f", "formula must be a non-empty string")
                cached = None
                if "v" in cell_doc:
                    cached = _scalar_from_value(cell_doc["v"], f"{cptr}/v")
                cells[(row, col)] = Formula(ftext, cached)
            else:
                cells[(row, col)] = Constant(_scalar_from_value(cell_doc["v"], f"{cptr}/v"))

        sheets.append(Worksheet(name=name, cells=cells, hidden=hidden))

    names: dict[str, tuple[str, str]] = {}
    names_doc = doc.get("names", {})
    _expect(isinstance(names_doc, dict), "/names", "must be an object")
    names_doc.pop("__duplicate_keys__", None)
    for defined, refers in names_doc.items():
        _expect(isinstance(refers, str), f"/names/{defined}", "refers-to must be a string")
        names[defined.casefold()] = (defined, refers)

    return Workbook(name=doc["name"], sheets=sheets, names=names)


def sniff_is_fixture(head: bytes) -> bool:
    """True when the file content looks like fixture JSON rather than a ZIP."""
    stripped = head.lstrip()
    return stripped.startswith(b"{")
