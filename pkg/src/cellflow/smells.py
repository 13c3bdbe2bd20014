"""Structure-smell detection on the global view.

Four detectors, all driven purely by the worksheet-level aggregate graph
(plus sheet emptiness and thresholds):

  InterWorksheetCycle    strongly connected groups of >= 2 worksheets
  AgainstTheStream       the flow is cyclic and exactly one link, removed
                         on its own, would make it acyclic: that link is
                         the single arrow running against the stream. A
                         mutual loop offers two such removals and is
                         reported as a cycle instead.
  DisconnectedWorksheet  a non-empty sheet exchanging no references with
                         the rest (needs >= 2 sheets to be meaningful)
  HeavyCoupling          a sheet pair whose combined reference count
                         passes both an absolute and a relative threshold
"""

from __future__ import annotations

from dataclasses import dataclass, replace

from . import kernels
from .graph import ViewGraph, sheet_node_id
from .model import Workbook

INTER_WORKSHEET_CYCLE = "InterWorksheetCycle"
AGAINST_THE_STREAM = "AgainstTheStream"
DISCONNECTED_WORKSHEET = "DisconnectedWorksheet"
HEAVY_COUPLING = "HeavyCoupling"


@dataclass(frozen=True)
class Smell:
    kind: str
    subjects: tuple[str, ...]
    metrics: dict
    message: str


@dataclass(frozen=True)
class SmellConfig:
    heavy_abs_min: int = 20
    heavy_rel_min: float = 0.3
    report_empty_sheets: bool = False

    def __post_init__(self):
        if self.heavy_abs_min < 1:
            raise ValueError("heavy_abs_min must be >= 1")
        if not 0 < self.heavy_rel_min <= 1:
            raise ValueError("heavy_rel_min must be in (0, 1]")


DEFAULT_CONFIG = SmellConfig()


def _edge_arrays(view: ViewGraph) -> tuple[dict[str, int], list[int], list[int]]:
    index = {node.id: i for i, node in enumerate(view.nodes)}
    tails = [index[e.src] for e in view.edges]
    heads = [index[e.dst] for e in view.edges]
    return index, tails, heads


def detect_cycles(view: ViewGraph) -> list[Smell]:
    _, tails, heads = _edge_arrays(view)
    if not tails:
        return []
    labels = kernels.scc_labels(len(view.nodes), tails, heads)
    groups: dict[int, list[str]] = {}
    for node, label in zip(view.nodes, labels):
        groups.setdefault(label, []).append(node.label)

    smells = []
    for members in groups.values():
        if len(members) < 2:
            continue
        subjects = tuple(sorted(members))
        if len(subjects) == 2:
            message = (
                f"direct loop: data flows back and forth between "
                f"worksheets '{subjects[0]}' and '{subjects[1]}'"
            )
        else:
            joined = ", ".join(f"'{s}'" for s in subjects)
            message = f"reference cycle through {len(subjects)} worksheets: {joined}"
        smells.append(Smell(INTER_WORKSHEET_CYCLE, subjects, {"size": len(subjects)}, message))
    smells.sort(key=lambda s: s.subjects)
    return smells


def detect_against_stream(view: ViewGraph) -> list[Smell]:
    _, tails, heads = _edge_arrays(view)
    if not tails:
        return []
    if not kernels.has_cycle(len(view.nodes), tails, heads):
        return []
    mask = kernels.removal_fix_mask(len(view.nodes), tails, heads)
    candidates = [e for e, fixed in zip(view.edges, mask) if fixed]
    if len(candidates) != 1:
        # zero: no single link explains the cycling; several: a mutual loop
        return []
    labels = {node.id: node.label for node in view.nodes}
    edge = min(candidates, key=lambda e: (e.multiplicity, labels[e.src], labels[e.dst]))
    a, b = labels[edge.src], labels[edge.dst]
    return [
        Smell(
            AGAINST_THE_STREAM,
            (a, b),
            {"multiplicity": edge.multiplicity},
            f"single arrow against the stream: '{a}' -> '{b}' "
            f"(multiplicity {edge.multiplicity}); removing it leaves an acyclic flow",
        )
    ]


def detect_disconnected(view: ViewGraph, workbook: Workbook, config: SmellConfig = DEFAULT_CONFIG) -> list[Smell]:
    if len(workbook.sheets) < 2:
        return []
    touched: set[str] = set()
    for e in view.edges:
        touched.add(e.src)
        touched.add(e.dst)

    smells = []
    for ws in workbook.sheets:
        if ws.is_empty() and not config.report_empty_sheets:
            continue
        if sheet_node_id(ws.name) in touched:
            continue
        smells.append(
            Smell(
                DISCONNECTED_WORKSHEET,
                (ws.name,),
                {"cells": len(ws.cells)},
                f"worksheet '{ws.name}' exchanges no references with the rest of the workbook",
            )
        )
    smells.sort(key=lambda s: s.subjects)
    return smells


def detect_heavy_coupling(view: ViewGraph, config: SmellConfig = DEFAULT_CONFIG) -> list[Smell]:
    labels = {node.id: node.label for node in view.nodes}
    mult: dict[tuple[str, str], int] = {}
    total = 0
    for e in view.edges:
        mult[(e.src, e.dst)] = mult.get((e.src, e.dst), 0) + e.multiplicity
        total += e.multiplicity

    pairs = sorted({tuple(sorted((labels[a], labels[b]))) for a, b in mult})
    smells = []
    for a, b in pairs:
        ida, idb = _id_by_label(view, a), _id_by_label(view, b)
        coupling = mult.get((ida, idb), 0) + mult.get((idb, ida), 0)
        # relative test kept multiplicative: no division by a zero total
        if coupling >= config.heavy_abs_min and coupling >= config.heavy_rel_min * total:
            smells.append(
                Smell(
                    HEAVY_COUPLING,
                    (a, b),
                    {
                        "coupling": coupling,
                        "heavy_abs_min": config.heavy_abs_min,
                        "heavy_rel_min": config.heavy_rel_min,
                        "total_cross_refs": total,
                    },
                    f"worksheets '{a}' and '{b}' are heavily coupled "
                    f"({coupling} of {total} cross-sheet references); consider merging them",
                )
            )
    return smells


def _id_by_label(view: ViewGraph, label: str) -> str:
    for node in view.nodes:
        if node.label == label:
            return node.id
    raise KeyError(label)


def detect_all(view: ViewGraph, workbook: Workbook, config: SmellConfig = DEFAULT_CONFIG) -> list[Smell]:
    return (
        detect_cycles(view)
        + detect_against_stream(view)
        + detect_disconnected(view, workbook, config)
        + detect_heavy_coupling(view, config)
    )


def annotate_smells(view: ViewGraph, smells: list[Smell]) -> ViewGraph:
    """Return the view with smell badges stamped onto subject nodes."""
    badges: dict[str, list[str]] = {}
    for smell in smells:
        for subject in smell.subjects:
            badges.setdefault(subject, []).append(smell.kind)
    nodes = tuple(
        replace(node, smell_badges=tuple(badges.get(node.label, ())))
        for node in view.nodes
    )
    return ViewGraph(view.level, nodes, view.edges)
