import json
import math
import xml.etree.ElementTree as ET

import jsonschema
import pytest

from cellflow.export import from_json, graph_to_dot, to_dgml, to_json, view_to_dot
from cellflow.fixture import load_fixture
from cellflow.graph import global_view, worksheet_view
from cellflow.pipeline import analyze

from helpers import DOCS, FIXTURES, make_workbook

DGML_NS = "{http://schemas.microsoft.com/vs/2009/dgml}"


def minimal_analysis():
    return analyze(make_workbook({"S": {"A1": 5, "B1": "=A1*2"}}))


def exam_analysis():
    return analyze(load_fixture(str(FIXTURES / "exam.json")))


# ------------------------------------------------------------------- DGML

def test_minimal_dgml_counts():
    a = minimal_analysis()
    root = ET.fromstring(to_dgml(a.graph))
    nodes = root.findall(f"./{DGML_NS}Nodes/{DGML_NS}Node")
    links = root.findall(f"./{DGML_NS}Links/{DGML_NS}Link")
    assert len(nodes) == 4  # sheet, block, two cells; the root element is the workbook
    contains = [l for l in links if l.get("Category") == "Contains"]
    flows = [l for l in links if l.get("Category") is None]
    assert len(contains) == 3
    assert len(flows) == 1


def test_dgml_link_arithmetic_holds_generally():
    a = exam_analysis()
    root = ET.fromstring(to_dgml(a.graph))
    nodes = root.findall(f"./{DGML_NS}Nodes/{DGML_NS}Node")
    links = root.findall(f"./{DGML_NS}Links/{DGML_NS}Link")
    contains = [l for l in links if l.get("Category") == "Contains"]
    n_sheets = len(a.graph.sheet_nodes())
    # the containment forest has one tree per worksheet
    assert len(contains) == len(nodes) - n_sheets
    assert len(links) - len(contains) == len(a.graph.cell_edges) + len(a.graph.approx_edges)


def test_dgml_escapes_xml_metacharacters():
    a = analyze(make_workbook({"A&B": {"A1": 5, "B1": '="x"&A1'}}))
    text = to_dgml(a.graph)
    assert 'Label="A&amp;B"' in text
    ET.fromstring(text)  # must stay well-formed


def test_dgml_group_states_and_hints():
    a = exam_analysis()
    default = to_dgml(a.graph)
    root = ET.fromstring(default)
    groups = {n.get("Id"): n.get("Group") for n in root.iter(f"{DGML_NS}Node")}
    assert groups["sheet:exam"] == "Expanded"
    assert all(g == "Collapsed" for nid, g in groups.items() if nid.startswith("block:"))
    assert groups["cell:exam!B2"] is None

    hinted = to_dgml(a.graph, {"sheet:exam": "Collapsed"})
    root = ET.fromstring(hinted)
    groups = {n.get("Id"): n.get("Group") for n in root.iter(f"{DGML_NS}Node")}
    assert groups["sheet:exam"] == "Collapsed"


def test_exam_dgml_contains_loop_both_ways():
    a = exam_analysis()
    root = ET.fromstring(to_dgml(a.graph))
    flows = {
        (l.get("Source"), l.get("Target"))
        for l in root.iter(f"{DGML_NS}Link")
        if l.get("Category") is None
    }
    exam_to_labwork = any(s.startswith("cell:exam!") and t.startswith("cell:labwork!") for s, t in flows)
    labwork_to_exam = any(s.startswith("cell:labwork!") and t.startswith("cell:exam!") for s, t in flows)
    assert exam_to_labwork and labwork_to_exam


# -------------------------------------------------------------------- DOT

def test_penwidth_log_scaling():
    a = exam_analysis()
    dot = view_to_dot(global_view(a.graph))
    assert "penwidth=1.0000" not in dot  # exam's lightest cross edge is x5
    expected = 1 + math.log(5)
    assert f"penwidth={expected:.4f}" in dot


def test_penwidth_values():
    a = analyze(make_workbook({"A": {"A1": 1, "A2": 2, "A3": 3}, "B": {"A1": "=A!A1", "A2": "=A!A2+A!A3"}}))
    view = global_view(a.graph)
    dot_log = view_to_dot(view)
    assert "penwidth=2.0986" in dot_log  # 1 + ln 3
    dot_linear = view_to_dot(view, scale="linear")
    assert "penwidth=3.0000" in dot_linear


def test_single_edge_penwidth_is_one():
    a = analyze(make_workbook({"A": {"A1": 1}, "B": {"A1": "=A!A1"}}))
    dot = view_to_dot(global_view(a.graph))
    assert "penwidth=1.0000" in dot  # ln 1 = 0


def test_empty_view_renders_empty_digraph():
    a = analyze(make_workbook({}))
    dot = view_to_dot(global_view(a.graph))
    assert "->" not in dot
    assert dot.startswith('digraph "global" {')


def test_dot_quotes_and_ascii_escapes():
    a = analyze(make_workbook({'quo"te': {"A1": 1}, "umläut": {"A1": '=\'quo"te\'!A1'}}))
    dot = view_to_dot(global_view(a.graph))
    assert '\\"' in dot
    assert "\\xe4" in dot
    assert "ä" not in dot


def test_full_graph_dot_has_clusters():
    a = exam_analysis()
    dot = graph_to_dot(a.graph)
    assert "compound=true;" in dot
    assert dot.count("subgraph cluster_") == 6 + sum(len(b) for b in a.blocks.values())
    assert '"cell:exam!A2"' in dot


# ------------------------------------------------------------------- JSON

def test_document_validates_against_published_schema():
    a = exam_analysis()
    doc = json.loads(to_json(a.graph, a.smells()))
    schema = json.loads((DOCS / "graph-schema.json").read_text())
    jsonschema.validate(doc, schema)


def test_minimal_document_validates_too():
    a = minimal_analysis()
    doc = json.loads(to_json(a.graph, a.smells()))
    schema = json.loads((DOCS / "graph-schema.json").read_text())
    jsonschema.validate(doc, schema)
    assert doc["version"] == "cellflow-graph/1"


def test_round_trip_reconstructs_graph_and_smells():
    a = exam_analysis()
    smells = a.smells()
    graph2, smells2 = from_json(to_json(a.graph, smells))
    assert graph2 == a.graph
    assert smells2 == smells


def test_round_trip_keeps_approximate_edges_apart():
    a = analyze(make_workbook({"d": {"A1": 1, "A2": 2}, "c": {"B1": "=SUM(d!A:A)"}}))
    graph2, _ = from_json(to_json(a.graph, []))
    assert graph2.approx_edges == a.graph.approx_edges
    assert graph2.cell_edges == a.graph.cell_edges


def test_version_gate():
    a = minimal_analysis()
    doc = json.loads(to_json(a.graph, []))
    doc["version"] = "cellflow-graph/2"
    with pytest.raises(ValueError):
        from_json(json.dumps(doc))


def test_serializers_are_deterministic():
    a1 = exam_analysis()
    a2 = exam_analysis()
    assert to_json(a1.graph, a1.smells()) == to_json(a2.graph, a2.smells())
    assert to_dgml(a1.graph) == to_dgml(a2.graph)
    assert view_to_dot(global_view(a1.graph)) == view_to_dot(global_view(a2.graph))
    assert graph_to_dot(a1.graph) == graph_to_dot(a2.graph)


def test_views_in_document_match_projections():
    a = exam_analysis()
    doc = json.loads(to_json(a.graph, []))
    gv = global_view(a.graph)
    got = {(e["from"], e["to"]): e["multiplicity"] for e in doc["views"]["global"]["edges"]}
    expected = {(e.src, e.dst): e.multiplicity for e in gv.edges}
    assert got == expected
    wv = worksheet_view(a.graph, "grades")
    got_ws = {(e["from"], e["to"]) for e in doc["views"]["worksheets"]["grades"]["edges"]}
    assert got_ws == {(e.src, e.dst) for e in wv.edges}
