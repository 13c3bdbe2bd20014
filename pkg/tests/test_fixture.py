import pytest

from cellflow.errors import DuplicateCellAddress, DuplicateSheetName, SchemaViolation
from cellflow.fixture import load_fixture, parse_fixture
from cellflow.model import Constant, ErrorValue, Formula

from helpers import FIXTURES


def test_minimal_fixture():
    wb = parse_fixture('{"name":"t","sheets":[{"name":"S1","cells":{"A1":{"v":5},"B1":{"f":"A1*2"}}}]}')
    assert wb.name == "t"
    assert len(wb.sheets) == 1
    sheet = wb.sheets[0]
    assert sheet.cells[(1, 1)] == Constant(5)
    assert sheet.cells[(1, 2)] == Formula("A1*2")


def test_formula_with_cached_value():
    wb = parse_fixture('{"name":"t","sheets":[{"name":"S","cells":{"B1":{"f":"A1*2","v":10}}}]}')
    assert wb.sheets[0].cells[(1, 2)] == Formula("A1*2", 10)


def test_duplicate_sheet_names_rejected_case_insensitively():
    with pytest.raises(DuplicateSheetName):
        parse_fixture('{"name":"t","sheets":[{"name":"Data"},{"name":"data"}]}')


def test_duplicate_cell_address_rejected():
    doc = '{"name":"t","sheets":[{"name":"S","cells":{"A1":{"v":1},"A1":{"v":2}}}]}'
    with pytest.raises(DuplicateCellAddress):
        parse_fixture(doc)


@pytest.mark.parametrize(
    "doc,pointer",
    [
        ('{"sheets":[]}', "/name"),
        ('{"name":"t"}', "/sheets"),
        ('{"name":"t","sheets":[{}]}', "/sheets/0/name"),
        ('{"name":"t","sheets":[],"version":"cellflow-fixture/2"}', "/version"),
        ('{"name":"t","sheets":[{"name":"S","cells":{"a1":{"v":1}}}]}', "/sheets/0/cells/a1"),
        ('{"name":"t","sheets":[{"name":"S","cells":{"A0":{"v":1}}}]}', "/sheets/0/cells/A0"),
        ('{"name":"t","sheets":[{"name":"S","cells":{"A1":{}}}]}', "/sheets/0/cells/A1"),
        ('{"name":"t","sheets":[{"name":"S","cells":{"A1":{"x":1}}}]}', "/sheets/0/cells/A1"),
        ('{"name":"t","sheets":[{"name":"S","cells":{"A1":{"f":""}}}]}', "/sheets/0/cells/A1/f"),
        ('{"name":"t","sheets":[{"name":"S","cells":{"A1":{"v":null}}}]}', "/sheets/0/cells/A1/v"),
        ('{"name":"t","sheets":[],"extra":1}', "/extra"),
    ],
)
def test_schema_violations_carry_json_pointers(doc, pointer):
    with pytest.raises(SchemaViolation) as exc:
        parse_fixture(doc)
    assert exc.value.pointer == pointer


def test_invalid_json_is_schema_violation():
    with pytest.raises(SchemaViolation):
        parse_fixture("not json at all")


def test_error_code_strings_become_error_constants():
    wb = parse_fixture('{"name":"t","sheets":[{"name":"S","cells":{"A1":{"v":"#REF!"},"A2":{"v":"#reference"}}}]}')
    assert wb.sheets[0].cells[(1, 1)] == Constant(ErrorValue("#REF!"))
    assert wb.sheets[0].cells[(2, 1)] == Constant("#reference")


def test_hidden_flag_and_names_table():
    wb = parse_fixture(
        '{"name":"t","sheets":[{"name":"S","hidden":true}],"names":{"Rates":"S!$A$1:$B$2"}}'
    )
    assert wb.sheets[0].hidden is True
    assert wb.names["rates"] == ("Rates", "S!$A$1:$B$2")


def test_income_fixture_has_expected_labelled_blocks():
    wb = load_fixture(str(FIXTURES / "income.json"))
    texts = {c.value for c in wb.sheets[0].cells.values() if isinstance(c, Constant)}
    assert "net sales" in texts
    assert "cost of sales" in texts


def test_loading_is_deterministic():
    path = str(FIXTURES / "exam.json")
    assert load_fixture(path) == load_fixture(path)
