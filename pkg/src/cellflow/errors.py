"""Exception types shared across the package."""

from __future__ import annotations


class CellflowError(Exception):
    """Base class for all errors raised by this package."""


class IngestError(CellflowError):
    """A workbook file could not be loaded."""


class NotAZip(IngestError):
    def __init__(self, path: str):
        super().__init__(f"not a ZIP archive: {path}")
        self.path = path


class MissingWorkbookPart(IngestError):
    def __init__(self, member: str):
        super().__init__(f"missing workbook part: {member}")
        self.member = member


class MalformedSheetXml(IngestError):
    def __init__(self, member: str, detail: str = ""):
        msg = f"malformed XML in {member}"
        if detail:
            msg += f": {detail}"
        super().__init__(msg)
        self.member = member


class SchemaViolation(IngestError):
    """Fixture document does not match the fixture schema. Carries a JSON pointer."""

    def __init__(self, pointer: str, detail: str):
        super().__init__(f"schema violation at {pointer}: {detail}")
        self.pointer = pointer


class DuplicateSheetName(IngestError):
    def __init__(self, name: str):
        super().__init__(f"duplicate sheet name: {name!r}")
        self.name = name


class DuplicateCellAddress(IngestError):
    def __init__(self, sheet: str, address: str):
        super().__init__(f"duplicate cell address {address!r} on sheet {sheet!r}")
        self.sheet = sheet
        self.address = address


class UnknownSheet(CellflowError):
    def __init__(self, name: str):
        super().__init__(f"no such worksheet: {name!r}")
        self.name = name


class UnknownBlock(CellflowError):
    def __init__(self, sheet: str, block: str):
        super().__init__(f"no such data block on sheet {sheet!r}: {block!r}")
        self.sheet = sheet
        self.block = block


class FormulaError(CellflowError):
    """Base class for formula tokenizing/parsing failures."""


class ParseError(FormulaError):
    def __init__(self, offset: int, expected: str):
        super().__init__(f"parse error at offset {offset}: {expected}")
        self.offset = offset
        self.expected = expected


class LexError(ParseError):
    def __init__(self, offset: int, detail: str = "illegal character"):
        super().__init__(offset, detail)
