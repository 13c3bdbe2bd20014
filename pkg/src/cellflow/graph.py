"""The leveled dataflow graph and its three view projections.

Node hierarchy: workbook > worksheet > block > cell, with parent links.
Only Data and Formula cells become cell nodes. Edges run in dataflow
direction, precedent -> dependent formula. Full-column/row references
are not exploded into cells; they surface as approximate block-level
edges. Circular and unresolved references are recorded as warnings, not
errors, because downstream analysis wants to see them.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping, Sequence

from . import kernels
from .addresses import CellAddress
from .errors import UnknownBlock, UnknownSheet
from .formulas.precedents import FULL_COLUMN_OR_ROW, PrecedentSet
from .model import Workbook
from .structure import CellType, DataBlock

KIND_WORKBOOK = "workbook"
KIND_WORKSHEET = "worksheet"
KIND_BLOCK = "block"
KIND_CELL = "cell"

WORKBOOK_NODE_ID = "workbook"

GLOBAL_LEVEL = ("global",)


def sheet_node_id(sheet: str) -> str:
    return f"sheet:{sheet}"


def block_node_id(block_id: str) -> str:
    return f"block:{block_id}"


def cell_node_id(addr: CellAddress) -> str:
    return f"cell:{addr.sheet}!{addr.a1}"


@dataclass(frozen=True)
class GraphNode:
    id: str
    kind: str
    label: str
    parent: str | None = None


@dataclass(frozen=True)
class CellEdge:
    src: str  # precedent cell node
    dst: str  # dependent formula cell node


@dataclass(frozen=True)
class ApproxEdge:
    src: str  # source block node
    dst: str  # dependent cell's block node


@dataclass(frozen=True)
class GraphWarning:
    kind: str  # CircularReference | UnresolvedReference | FormulaParseError
    message: str


@dataclass
class LeveledGraph:
    workbook_name: str
    nodes: list[GraphNode]
    cell_edges: list[CellEdge]
    approx_edges: list[ApproxEdge]
    warnings: list[GraphWarning]
    formula_cells: frozenset[str] = frozenset()  # cell node ids holding formulas
    _by_id: dict[str, GraphNode] = field(init=False, repr=False, compare=False)
    _order: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        self._by_id = {node.id: node for node in self.nodes}
        self._order = {node.id: i for i, node in enumerate(self.nodes)}

    def node(self, node_id: str) -> GraphNode:
        return self._by_id[node_id]

    def node_order(self, node_id: str) -> int:
        return self._order[node_id]

    def sheet_nodes(self) -> list[GraphNode]:
        return [n for n in self.nodes if n.kind == KIND_WORKSHEET]

    def block_nodes(self, sheet: str | None = None) -> list[GraphNode]:
        if sheet is None:
            return [n for n in self.nodes if n.kind == KIND_BLOCK]
        parent = sheet_node_id(sheet)
        return [n for n in self.nodes if n.kind == KIND_BLOCK and n.parent == parent]

    def owner_sheet(self, node_id: str) -> str:
        """Worksheet name owning any node (cell, block or sheet node)."""
        node = self._by_id[node_id]
        while node.kind != KIND_WORKSHEET:
            node = self._by_id[node.parent]
        return node.label

    def owner_block(self, cell_id: str) -> str:
        """Block node id containing a cell node."""
        return self._by_id[cell_id].parent


@dataclass(frozen=True)
class ViewNode:
    id: str
    label: str
    kind: str
    smell_badges: tuple[str, ...] = ()


@dataclass(frozen=True)
class ViewEdge:
    src: str
    dst: str
    multiplicity: int
    approximate: bool = False


@dataclass(frozen=True)
class ViewGraph:
    level: tuple
    nodes: tuple[ViewNode, ...]
    edges: tuple[ViewEdge, ...]


def build_graph(
    workbook: Workbook,
    types: Mapping[CellAddress, CellType],
    blocks: Mapping[str, Sequence[DataBlock]],
    labels: Mapping[CellAddress, "object"],
    precedents: Mapping[CellAddress, PrecedentSet],
    extra_warnings: Iterable[GraphWarning] = (),
) -> LeveledGraph:
    """Assemble the leveled graph from the upstream analysis products.

    `blocks` maps each worksheet name to its blocks; `labels` maps cell
    addresses to objects with a .display attribute.
    """
    nodes: list[GraphNode] = [GraphNode(WORKBOOK_NODE_ID, KIND_WORKBOOK, workbook.name)]
    block_of_cell: dict[CellAddress, DataBlock] = {}

    for ws in workbook.sheets:
        sid = sheet_node_id(ws.name)
        nodes.append(GraphNode(sid, KIND_WORKSHEET, ws.name, WORKBOOK_NODE_ID))
        sheet_blocks = blocks.get(ws.name, ())
        for block in sheet_blocks:
            nodes.append(GraphNode(block_node_id(block.id), KIND_BLOCK, block.name or block.id, sid))
        for (row, col) in ws.sorted_coords():
            addr = CellAddress(ws.name, col, row)
            if types.get(addr) not in (CellType.DATA, CellType.FORMULA):
                continue
            block = _owning_block(sheet_blocks, row, col)
            block_of_cell[addr] = block
            label = labels[addr].display if addr in labels else addr.a1
            nodes.append(GraphNode(cell_node_id(addr), KIND_CELL, label, block_node_id(block.id)))

    node_ids = {n.id for n in nodes}
    order_key = {n.id: i for i, n in enumerate(nodes)}

    cell_edges: list[CellEdge] = []
    approx: list[ApproxEdge] = []
    warnings: list[GraphWarning] = list(extra_warnings)

    formula_addrs = [
        addr for addr, _ in workbook.iter_cells() if types.get(addr) == CellType.FORMULA
    ]
    for addr in formula_addrs:
        pset = precedents.get(addr)
        if pset is None:
            continue
        dst = cell_node_id(addr)
        for p in sorted(pset.cells, key=lambda a: (a.sheet.casefold(), a.row, a.col)):
            src = cell_node_id(p)
            if src in node_ids:
                cell_edges.append(CellEdge(src, dst))
        for entry in pset.unresolved:
            warnings.append(
                GraphWarning("UnresolvedReference", f"{addr}: {entry.reason}: {entry.text}")
            )
            if entry.reason == FULL_COLUMN_OR_ROW and entry.sheet is not None:
                approx.extend(
                    _approx_edges_for_span(entry, blocks.get(entry.sheet, ()), block_of_cell[addr])
                )

    cell_edges = sorted(set(cell_edges), key=lambda e: (order_key[e.dst], order_key[e.src]))
    approx = sorted(set(approx), key=lambda e: (order_key[e.dst], order_key[e.src]))

    warnings.extend(_cycle_warnings(nodes, cell_edges, order_key))

    return LeveledGraph(
        workbook_name=workbook.name,
        nodes=nodes,
        cell_edges=cell_edges,
        approx_edges=approx,
        warnings=warnings,
        formula_cells=frozenset(cell_node_id(a) for a in formula_addrs),
    )


def _owning_block(sheet_blocks: Sequence[DataBlock], row: int, col: int) -> DataBlock:
    for block in sheet_blocks:
        if (row, col) in block.members:
            return block
    raise ValueError(f"cell ({row},{col}) belongs to no block")


def _approx_edges_for_span(entry, sheet_blocks: Sequence[DataBlock], target_block: DataBlock):
    for block in sheet_blocks:
        if entry.axis == "col":
            intersects = not (entry.hi < block.left or entry.lo > block.right)
        else:
            intersects = not (entry.hi < block.top or entry.lo > block.bottom)
        if intersects:
            yield ApproxEdge(block_node_id(block.id), block_node_id(target_block.id))


def _cycle_warnings(nodes, cell_edges, order_key) -> list[GraphWarning]:
    cell_ids = [n.id for n in nodes if n.kind == KIND_CELL]
    if not cell_ids or not cell_edges:
        return []
    index = {cid: i for i, cid in enumerate(cell_ids)}
    tails = [index[e.src] for e in cell_edges]
    heads = [index[e.dst] for e in cell_edges]
    labels = kernels.scc_labels(len(cell_ids), tails, heads)

    groups: dict[int, list[str]] = {}
    for cid, label in zip(cell_ids, labels):
        groups.setdefault(label, []).append(cid)
    self_loops = {e.src for e in cell_edges if e.src == e.dst}

    warnings = []
    for label in sorted(groups, key=lambda g: min(order_key[c] for c in groups[g])):
        members = groups[label]
        if len(members) == 1 and members[0] not in self_loops:
            continue
        pretty = ", ".join(m.removeprefix("cell:") for m in members)
        warnings.append(GraphWarning("CircularReference", f"circular reference: {pretty}"))
    return warnings


def global_view(graph: LeveledGraph) -> ViewGraph:
    """One node per worksheet; an edge A->B counts formulas in B reading cells in A."""
    sheets = graph.sheet_nodes()
    view_nodes = tuple(ViewNode(n.id, n.label, KIND_WORKSHEET) for n in sheets)

    exact: dict[tuple[str, str], int] = {}
    fuzzy: dict[tuple[str, str], int] = {}
    for e in graph.cell_edges:
        a, b = graph.owner_sheet(e.src), graph.owner_sheet(e.dst)
        if a != b:
            key = (sheet_node_id(a), sheet_node_id(b))
            exact[key] = exact.get(key, 0) + 1
    for e in graph.approx_edges:
        a, b = graph.owner_sheet(e.src), graph.owner_sheet(e.dst)
        if a != b:
            key = (sheet_node_id(a), sheet_node_id(b))
            fuzzy[key] = fuzzy.get(key, 0) + 1

    edges = _aggregate_edges(exact, fuzzy, {n.id: i for i, n in enumerate(view_nodes)})
    return ViewGraph(GLOBAL_LEVEL, view_nodes, edges)


def worksheet_view(graph: LeveledGraph, sheet: str) -> ViewGraph:
    """Blocks of one worksheet plus collapsed foreign-worksheet neighbours."""
    target = _resolve_sheet_node(graph, sheet)
    own_blocks = graph.block_nodes(target.label)
    own_ids = {n.id for n in own_blocks}

    def container(node_id: str, kind: str) -> str:
        owner = graph.owner_sheet(node_id)
        if owner == target.label:
            return graph.owner_block(node_id) if kind == KIND_CELL else node_id
        return sheet_node_id(owner)

    exact: dict[tuple[str, str], int] = {}
    fuzzy: dict[tuple[str, str], int] = {}
    foreign: set[str] = set()
    for edges, bucket, kind in (
        (graph.cell_edges, exact, KIND_CELL),
        (graph.approx_edges, fuzzy, KIND_BLOCK),
    ):
        for e in edges:
            src, dst = container(e.src, kind), container(e.dst, kind)
            if src == dst or (src not in own_ids and dst not in own_ids):
                continue
            bucket[(src, dst)] = bucket.get((src, dst), 0) + 1
            for c in (src, dst):
                if c not in own_ids:
                    foreign.add(c)

    view_nodes = [ViewNode(n.id, n.label, KIND_BLOCK) for n in own_blocks]
    for n in graph.sheet_nodes():
        if n.id in foreign:
            view_nodes.append(ViewNode(n.id, n.label, KIND_WORKSHEET))
    nodes = tuple(view_nodes)
    edges = _aggregate_edges(exact, fuzzy, {n.id: i for i, n in enumerate(nodes)})
    return ViewGraph(("worksheet", target.label), nodes, edges)


def formula_view(graph: LeveledGraph, sheet: str, block: str) -> ViewGraph:
    """All formula cells of one block plus their direct precedents."""
    target = _resolve_sheet_node(graph, sheet)
    block_node = _resolve_block_node(graph, target.label, block)

    formulas = [
        n.id
        for n in graph.nodes
        if n.kind == KIND_CELL and n.parent == block_node.id and n.id in graph.formula_cells
    ]
    formula_ids = set(formulas)
    edges = [e for e in graph.cell_edges if e.dst in formula_ids]

    included: dict[str, None] = dict.fromkeys(formulas)
    for e in sorted(edges, key=lambda e: graph.node_order(e.src)):
        included.setdefault(e.src)

    nodes = tuple(ViewNode(nid, graph.node(nid).label, KIND_CELL) for nid in included)
    node_order = {n.id: i for i, n in enumerate(nodes)}
    view_edges = tuple(
        ViewEdge(e.src, e.dst, 1)
        for e in sorted(edges, key=lambda e: (node_order[e.dst], node_order[e.src]))
    )
    return ViewGraph(("formula", target.label, block_node.id.removeprefix("block:")), nodes, view_edges)


def _aggregate_edges(exact, fuzzy, node_order) -> tuple[ViewEdge, ...]:
    keys = set(exact) | set(fuzzy)
    edges = [
        ViewEdge(
            src,
            dst,
            exact.get((src, dst), 0) + fuzzy.get((src, dst), 0),
            approximate=(src, dst) in fuzzy,
        )
        for src, dst in keys
    ]
    edges.sort(key=lambda e: (node_order[e.src], node_order[e.dst]))
    return tuple(edges)


def _resolve_sheet_node(graph: LeveledGraph, sheet: str) -> GraphNode:
    for n in graph.sheet_nodes():
        if n.label.casefold() == sheet.casefold():
            return n
    raise UnknownSheet(sheet)


def _resolve_block_node(graph: LeveledGraph, sheet: str, block: str) -> GraphNode:
    """Accept a block id, its bare range part ("A2:D4"), or its display name."""
    wanted = block.casefold()
    for n in graph.block_nodes(sheet):
        bare = n.id.removeprefix("block:")
        range_part = bare.split("!", 1)[1] if "!" in bare else bare
        if wanted in (bare.casefold(), range_part.casefold(), n.label.casefold()):
            return n
    raise UnknownBlock(sheet, block)


def topological_ranks(view: ViewGraph) -> dict[str, int]:
    """Longest-path layer per node, computed on the cycle condensation.

    Nodes in one strongly connected component share a rank; sources get 0.
    """
    n = len(view.nodes)
    index = {node.id: i for i, node in enumerate(view.nodes)}
    tails = []
    heads = []
    for e in view.edges:
        if e.src != e.dst:
            tails.append(index[e.src])
            heads.append(index[e.dst])

    comp = kernels.scc_labels(n, tails, heads) if n else []
    ncomp = max(comp) + 1 if comp else 0
    comp_edges: set[tuple[int, int]] = set()
    for t, h in zip(tails, heads):
        if comp[t] != comp[h]:
            comp_edges.add((comp[t], comp[h]))

    preds: dict[int, list[int]] = {i: [] for i in range(ncomp)}
    succs: dict[int, list[int]] = {i: [] for i in range(ncomp)}
    for t, h in comp_edges:
        preds[h].append(t)
        succs[t].append(h)

    indeg = {i: len(preds[i]) for i in range(ncomp)}
    ready = [i for i in range(ncomp) if indeg[i] == 0]
    rank = {i: 0 for i in range(ncomp)}
    while ready:
        c = ready.pop()
        for s in succs[c]:
            rank[s] = max(rank[s], rank[c] + 1)
            indeg[s] -= 1
            if indeg[s] == 0:
                ready.append(s)

    return {node.id: rank[comp[index[node.id]]] for node in view.nodes}
