import json

import pytest

from cellflow.cli import run

from helpers import FIXTURES
from xlsxgen import workbook_to_xlsx_bytes
from cellflow.fixture import load_fixture

EXAM = str(FIXTURES / "exam.json")
INCOME = str(FIXTURES / "income.json")


def test_smells_text_report(capsys):
    assert run(["smells", EXAM, "--format", "text"]) == 0
    out = capsys.readouterr().out
    lines = out.strip().splitlines()
    assert len(lines) == 2
    assert lines[0].startswith("InterWorksheetCycle:")
    assert "'exam'" in lines[0] and "'labwork'" in lines[0]
    assert lines[1].startswith("DisconnectedWorksheet:")
    assert "'lab-osiris'" in lines[1]


def test_smells_json_report(capsys):
    assert run(["smells", EXAM, "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    assert [s["kind"] for s in payload] == ["InterWorksheetCycle", "DisconnectedWorksheet"]


def test_smells_thresholds_flags(capsys):
    assert run(["smells", EXAM, "--heavy-abs", "10", "--heavy-rel", "0.2", "--format", "json"]) == 0
    payload = json.loads(capsys.readouterr().out)
    kinds = {s["kind"] for s in payload}
    assert "HeavyCoupling" in kinds


def test_fail_on_smell_exit_code(capsys):
    assert run(["smells", EXAM, "--fail-on-smell"]) == 3
    assert run(["smells", INCOME, "--fail-on-smell"]) == 0
    assert "no structure smells found" in capsys.readouterr().err


def test_analyze_writes_graph_document(tmp_path, capsys):
    out = tmp_path / "g.json"
    assert run(["analyze", EXAM, "-o", str(out)]) == 0
    doc = json.loads(out.read_text())
    assert doc["version"] == "cellflow-graph/1"
    assert doc["workbook_name"] == "exam"
    assert len(doc["smells"]) == 2


def test_analyze_is_byte_identical_across_runs(tmp_path):
    out1, out2 = tmp_path / "a.json", tmp_path / "b.json"
    assert run(["analyze", EXAM, "-o", str(out1)]) == 0
    assert run(["analyze", EXAM, "-o", str(out2)]) == 0
    assert out1.read_bytes() == out2.read_bytes()


def test_view_global_dot(capsys):
    assert run(["view", EXAM, "--level", "global", "--format", "dot"]) == 0
    dot = capsys.readouterr().out
    assert '"sheet:exam" -> "sheet:labwork"' in dot
    assert '"sheet:labwork" -> "sheet:exam"' in dot
    assert '"sheet:lab-osiris" [label="lab-osiris"' in dot


def test_view_worksheet_dot(capsys):
    assert run(["view", INCOME, "--level", "worksheet:income"]) == 0
    dot = capsys.readouterr().out
    assert 'label="net sales"' in dot
    assert 'label="cost of sales"' in dot


def test_view_formula_dgml(capsys):
    assert run(["view", EXAM, "--level", "formula:exam:A1:C6", "--format", "dgml"]) == 0
    text = capsys.readouterr().out
    assert 'Id="block:exam!A1:C6" Label="id" Group="Expanded"' in text


def test_view_unknown_sheet_is_usage_error(capsys):
    assert run(["view", EXAM, "--level", "worksheet:NoSuchSheet"]) == 1
    assert "no such worksheet" in capsys.readouterr().err


def test_view_bad_selector(capsys):
    assert run(["view", EXAM, "--level", "bogus"]) == 1


def test_bad_flag_is_usage_error(capsys):
    assert run(["smells", EXAM, "--heavy-abs", "0"]) == 1
    assert run(["frobnicate", EXAM]) == 1


def test_missing_file_is_ingest_error(capsys):
    assert run(["analyze", "/nonexistent/book.xlsx"]) == 2


def test_corrupt_file_is_ingest_error(tmp_path, capsys):
    bad = tmp_path / "bad.xlsx"
    bad.write_bytes(b"\x00\x01\x02")
    assert run(["analyze", str(bad)]) == 2
    assert "error" in capsys.readouterr().err


def test_xlsx_input_accepted(tmp_path, capsys):
    wb = load_fixture(EXAM)
    path = tmp_path / "exam.xlsx"
    path.write_bytes(workbook_to_xlsx_bytes(wb))
    assert run(["smells", str(path), "--format", "text"]) == 0
    lines = capsys.readouterr().out.strip().splitlines()
    assert len(lines) == 2


def test_export_formats(tmp_path):
    for fmt, needle in (("json", b'"cellflow-graph/1"'), ("dgml", b"<DirectedGraph"), ("dot", b"digraph")):
        out = tmp_path / f"out.{fmt}"
        assert run(["export", EXAM, "--format", fmt, "-o", str(out)]) == 0
        assert needle in out.read_bytes()


def test_export_linear_widths(capsys):
    assert run(["view", EXAM, "--level", "global", "--linear-widths"]) == 0
    assert "penwidth=5.0000" in capsys.readouterr().out
