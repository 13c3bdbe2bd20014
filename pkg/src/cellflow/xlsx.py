"""OOXML (.xlsx) workbook loader.

Reads values and formulas only: styling, charts, pivot caches and merge
decorations are ignored. Dates stay as their underlying serial numbers.
Shared formulas are expanded to per-cell text by translating the master
formula's relative references. Hidden sheets are loaded and flagged.
"""

from __future__ import annotations

import re
import zipfile
import xml.etree.ElementTree as ET

from .addresses import parse_a1
from .errors import MalformedSheetXml, MissingWorkbookPart, NotAZip
from .fixture import sniff_is_fixture
from .formulas.tokens import translate_formula
from .model import ERROR_CODES, Constant, ErrorValue, Formula, Scalar, Workbook, Worksheet

_INT_RE = re.compile(r"-?[0-9]+")


def load_xlsx(path: str) -> Workbook:
    try:
        archive = zipfile.ZipFile(path)
    except (zipfile.BadZipFile, OSError) as exc:
        if isinstance(exc, FileNotFoundError):
            raise
        raise NotAZip(str(path)) from exc

    with archive:
        loader = _XlsxLoader(archive)
        return loader.load(_workbook_name(str(path)))


def load_workbook(path: str) -> Workbook:
    """Load either format: .xlsx archives and fixture JSON, sniffed by content."""
    with open(path, "rb") as f:
        head = f.read(64)
    if head.startswith(b"PK"):
        return load_xlsx(path)
    if sniff_is_fixture(head):
        from .fixture import load_fixture

        return load_fixture(path)
    raise NotAZip(str(path))


def _workbook_name(path: str) -> str:
    base = path.replace("\\", "/").rsplit("/", 1)[-1]
    return base.rsplit(".", 1)[0] if "." in base else base


class _XlsxLoader:
    def __init__(self, archive: zipfile.ZipFile):
        self.archive = archive
        self.members = set(archive.namelist())

    def _read_xml(self, member: str) -> ET.Element:
        if member not in self.members:
            raise MissingWorkbookPart(member)
        try:
            return ET.fromstring(self.archive.read(member))
        except ET.ParseError as exc:
            raise MalformedSheetXml(member, str(exc)) from exc

    def load(self, name: str) -> Workbook:
        root = self._read_xml("xl/workbook.xml")
        rels = self._relationships()

        sheets: list[Worksheet] = []
        for el in root.iterfind("./{*}sheets/{*}sheet"):
            sheet_name = el.get("name", "")
            rel_id = _attr_any_ns(el, "id")
            if rel_id is None or rel_id not in rels:
                raise MalformedSheetXml("xl/workbook.xml", f"sheet {sheet_name!r} has no relationship")
            hidden = el.get("state") in ("hidden", "veryHidden")
            member = rels[rel_id]
            cells = self._load_sheet_cells(member)
            sheets.append(Worksheet(name=sheet_name, cells=cells, hidden=hidden))

        names: dict[str, tuple[str, str]] = {}
        for el in root.iterfind("./{*}definedNames/{*}definedName"):
            defined = el.get("name", "")
            if not defined or defined.startswith("_xlnm."):
                continue
            names[defined.casefold()] = (defined, (el.text or "").strip())

        return Workbook(name=name, sheets=sheets, names=names)

    def _relationships(self) -> dict[str, str]:
        member = "xl/_rels/workbook.xml.rels"
        root = self._read_xml(member)
        rels: dict[str, str] = {}
        for el in root.iterfind("./{*}Relationship"):
            target = el.get("Target", "")
            if target.startswith("/"):
                target = target.lstrip("/")
            elif not target.startswith("xl/"):
                target = "xl/" + target
            rels[el.get("Id", "")] = target
        return rels

    def _shared_strings(self) -> list[str]:
        if "xl/sharedStrings.xml" not in self.members:
            return []
        root = self._read_xml("xl/sharedStrings.xml")
        strings = []
        for si in root.iterfind("./{*}si"):
            strings.append("".join(t.text or "" for t in si.iterfind(".//{*}t")))
        return strings

    def _load_sheet_cells(self, member: str) -> dict[tuple[int, int], Constant | Formula]:
        if not hasattr(self, "_sst"):
            self._sst = self._shared_strings()
        root = self._read_xml(member)
        cells: dict[tuple[int, int], Constant | Formula] = {}
        # shared formula masters: si -> (text, row, col)
        masters: dict[str, tuple[str, int, int]] = {}

        prev_row = 0
        for row_el in root.iterfind("./{*}sheetData/{*}row"):
            row = int(row_el.get("r", prev_row + 1))
            prev_row = row
            prev_col = 0
            for cell_el in row_el.iterfind("./{*}c"):
                ref = cell_el.get("r")
                if ref is not None:
                    try:
                        col, cell_row = parse_a1(ref)
                    except ValueError as exc:
                        raise MalformedSheetXml(member, f"bad cell reference {ref!r}") from exc
                else:
                    col, cell_row = prev_col + 1, row
                prev_col = col

                content = self._cell_content(cell_el, member, cell_row, col, masters)
                if content is not None:
                    cells[(cell_row, col)] = content
        return cells

    def _cell_content(self, cell_el, member, row, col, masters) -> Constant | Formula | None:
        ctype = cell_el.get("t", "n")
        v_el = cell_el.find("./{*}v")
        f_el = cell_el.find("./{*}f")
        is_el = cell_el.find("./{*}is")

        cached = None
        if v_el is not None and v_el.text is not None:
            cached = self._convert_value(ctype, v_el.text, member)
        elif is_el is not None:
            cached = "".join(t.text or "" for t in is_el.iterfind(".//{*}t"))

        if f_el is not None:
            text = f_el.text or ""
            if f_el.get("t") == "shared":
                si = f_el.get("si", "")
                if text:
                    masters[si] = (text, row, col)
                elif si in masters:
                    master_text, mrow, mcol = masters[si]
                    text = translate_formula(master_text, row - mrow, col - mcol)
            if text:
                return Formula(text, cached)

        if cached is None or cached == "":
            return None
        return Constant(cached)

    def _convert_value(self, ctype: str, text: str, member: str) -> Scalar:
        if ctype == "s":
            try:
                return self._sst[int(text)]
            except (ValueError, IndexError) as exc:
                raise MalformedSheetXml(member, f"bad shared string index {text!r}") from exc
        if ctype == "b":
            return text.strip() != "0"
        if ctype == "e":
            code = text.strip()
            return ErrorValue(code) if code in ERROR_CODES else code
        if ctype in ("str", "inlineStr", "d"):
            return text
        # numeric
        stripped = text.strip()
        try:
            if _INT_RE.fullmatch(stripped):
                return int(stripped)
            return float(stripped)
        except ValueError as exc:
            raise MalformedSheetXml(member, f"bad numeric value {text!r}") from exc


def _attr_any_ns(el: ET.Element, local_name: str) -> str | None:
    for key, value in el.attrib.items():
        if key == local_name or key.endswith("}" + local_name):
            return value
    return None
