import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cellflow.addresses import CellAddress
from cellflow.formulas import extract_precedents, parse
from cellflow.structure import (
    CellType,
    cell_type,
    classify_cells,
    compute_labels,
    detect_blocks,
    name_blocks,
)

from helpers import make_sheet, make_workbook
from oracles import flood_fill_blocks


def analyze_types(workbook):
    precedents = {
        addr: extract_precedents(parse(content.text), addr.sheet, workbook)
        for addr, content in workbook.formula_cells()
    }
    return classify_cells(workbook, precedents), precedents


# ------------------------------------------------------------ classification

def test_formula_cells_are_formula():
    wb = make_workbook({"S": {"A1": 1, "B1": "=A1+1"}})
    types, _ = analyze_types(wb)
    assert types[CellAddress("S", 2, 1)] == CellType.FORMULA


def test_unreferenced_text_is_label():
    wb = make_workbook({"S": {"A1": "Total", "B1": 10}})
    types, _ = analyze_types(wb)
    assert types[CellAddress("S", 1, 1)] == CellType.LABEL
    assert types[CellAddress("S", 2, 1)] == CellType.DATA


def test_referenced_text_is_data():
    # "EUR" is consumed by a lookup elsewhere, so it acts as data
    wb = make_workbook({"S": {"A1": "EUR", "B1": 10, "C1": '=VLOOKUP(A1,A1:B1,2)'}})
    types, _ = analyze_types(wb)
    assert types[CellAddress("S", 1, 1)] == CellType.DATA


def test_booleans_and_errors_are_data():
    wb = make_workbook({"S": {"A1": True, "B1": "#REF!"}})
    types, _ = analyze_types(wb)
    assert types[CellAddress("S", 1, 1)] == CellType.DATA
    assert types[CellAddress("S", 2, 1)] == CellType.DATA


def test_absent_cells_are_empty():
    wb = make_workbook({"S": {"A1": 1}})
    types, _ = analyze_types(wb)
    assert cell_type(types, CellAddress("S", 5, 5)) == CellType.EMPTY


def test_classification_covers_every_stored_cell_exactly_once():
    wb = make_workbook({"S": {"A1": 1, "B2": "t", "C3": "=A1", "D4": False}})
    types, _ = analyze_types(wb)
    stored = {addr for addr, _ in wb.iter_cells()}
    assert set(types) == stored
    assert all(t != CellType.EMPTY for t in types.values())


# ------------------------------------------------------------------ blocks

def test_two_separated_blocks():
    ws = make_sheet("S", {"A1": 1, "B1": 1, "A2": 1, "B2": 1, "D5": 1, "E5": 1, "D6": 1, "E6": 1})
    blocks = detect_blocks(ws)
    assert [(b.top, b.left, b.bottom, b.right) for b in blocks] == [(1, 1, 2, 2), (5, 4, 6, 5)]


def test_l_shape_is_one_block_with_bounding_box():
    cells = {f"A{r}": 1 for r in range(1, 6)}
    cells.update({f"{c}5": 1 for c in "ABCDE"})
    blocks = detect_blocks(make_sheet("S", cells))
    assert len(blocks) == 1
    assert (blocks[0].top, blocks[0].left, blocks[0].bottom, blocks[0].right) == (1, 1, 5, 5)


def test_diagonal_touch_merges():
    ws = make_sheet("S", {"A1": 1, "B2": 1, "C3": 1, "D4": 1})
    blocks = detect_blocks(ws)
    assert len(blocks) == 1


def test_rectangle_merge_is_transitive():
    # components whose bounding boxes touch must merge even when the
    # cells themselves never do
    ws = make_sheet("S", {"A1": 1, "C1": 1, "A3": 1, "B2": 1})
    oracle = flood_fill_blocks({(r, c) for (r, c) in ws.cells})
    got = detect_blocks(ws)
    assert [(b.top, b.left, b.bottom, b.right) for b in got] == [o[0] for o in oracle]


def test_empty_sheet_has_no_blocks():
    assert detect_blocks(make_sheet("S", {})) == []


def test_block_id_format():
    (block,) = detect_blocks(make_sheet("data", {"B2": 1, "C3": 1}))
    assert block.id == "data!B2:C3"


def _random_coords(rng, rows=12, cols=12, density=0.35):
    return {
        (r, c)
        for r in range(1, rows + 1)
        for c in range(1, cols + 1)
        if rng.random() < density
    }


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32 - 1), st.floats(0.05, 0.7))
def test_blocks_match_flood_fill_oracle(seed, density):
    rng = random.Random(seed)
    coords = _random_coords(rng, density=density)
    ws = make_sheet("S", {})
    ws.cells = {coord: make_sheet("x", {"A1": 1}).cells[(1, 1)] for coord in coords}
    got = [((b.top, b.left, b.bottom, b.right), b.members) for b in detect_blocks(ws)]
    assert got == flood_fill_blocks(coords)


@settings(max_examples=100, deadline=None)
@given(st.integers(0, 2**32 - 1))
def test_block_invariants_on_random_grids(seed):
    rng = random.Random(seed)
    coords = _random_coords(rng)
    ws = make_sheet("S", {})
    ws.cells = {coord: make_sheet("x", {"A1": 1}).cells[(1, 1)] for coord in coords}
    blocks = detect_blocks(ws)

    # membership partitions the non-empty cells
    seen = set()
    for b in blocks:
        assert not (b.members & seen)
        seen |= b.members
        rows = [r for r, _ in b.members]
        cols = [c for _, c in b.members]
        # rect is the bounding box of the members
        assert (b.top, b.left, b.bottom, b.right) == (min(rows), min(cols), max(rows), max(cols))
    assert seen == coords

    # pairwise non-adjacency of block rects
    for i, a in enumerate(blocks):
        for b in blocks[i + 1 :]:
            assert a.left > b.right + 1 or b.left > a.right + 1 or a.top > b.bottom + 1 or b.top > a.bottom + 1


# ------------------------------------------------------------------ labels

def _block_and_types(cells):
    wb = make_workbook({"S": cells})
    types, _ = analyze_types(wb)
    (block,) = detect_blocks(wb.sheets[0])
    return wb.sheets[0], block, types


def test_label_composition_both_axes():
    ws, block, types = _block_and_types(
        {"B1": "Q1", "C1": "Q2", "A2": "net sales", "B2": 100, "C2": 110}
    )
    labels = compute_labels(block, types, ws)
    assert labels[CellAddress("S", 2, 2)].display == "Q1 net sales"
    assert labels[CellAddress("S", 3, 2)].display == "Q2 net sales"


def test_no_labels_fall_back_to_address():
    ws, block, types = _block_and_types({"A1": 1, "B1": "=A1*2"})
    labels = compute_labels(block, types, ws)
    assert labels[CellAddress("S", 1, 1)].display == "A1"
    assert labels[CellAddress("S", 2, 1)].display == "B1"


def test_single_label_used_alone():
    ws, block, types = _block_and_types({"B1": "score", "B2": 10})
    labels = compute_labels(block, types, ws)
    entry = labels[CellAddress("S", 2, 2)]
    assert entry.col_label == "score"
    assert entry.row_label is None
    assert entry.display == "score"


def test_nearest_label_wins():
    ws, block, types = _block_and_types({"A1": "far", "B1": "near", "C1": 1})
    entry = compute_labels(block, types, ws)[CellAddress("S", 3, 1)]
    assert entry.row_label == "near"


def test_labels_do_not_cross_block_borders():
    wb = make_workbook({"S": {"A1": "outside", "C1": 5}})
    types, _ = analyze_types(wb)
    blocks = detect_blocks(wb.sheets[0])
    assert len(blocks) == 2
    number_block = blocks[1]
    labels = compute_labels(number_block, types, wb.sheets[0])
    assert labels[CellAddress("S", 3, 1)].display == "C1"


def test_block_names_use_top_left_most_label():
    wb = make_workbook({"S": {"A1": "net sales", "B1": "Q1", "B2": 5}})
    types, _ = analyze_types(wb)
    (block,) = name_blocks(detect_blocks(wb.sheets[0]), types, wb.sheets[0])
    assert block.name == "net sales"


def test_unlabelled_block_named_by_id():
    wb = make_workbook({"S": {"B2": 5}})
    types, _ = analyze_types(wb)
    (block,) = name_blocks(detect_blocks(wb.sheets[0]), types, wb.sheets[0])
    assert block.name == "S!B2:B2"
