/** Deterministic hierarchical layout.
 *
 * Worksheet territories sit in columns by their rank in the document's
 * global view (longest path over the cycle condensation), so a sheet
 * keeps its column while being expanded or collapsed. Expanded sheets
 * stack their blocks vertically; expanded blocks lay their cells out in
 * a narrow grid. Everything is a pure function of the visible graph.
 */

import { VisibleGraph, VisibleNode } from "./aggregate.js";
import { DocumentIndex } from "./document.js";

export interface Box {
  node: VisibleNode;
  x: number;
  y: number;
  w: number;
  h: number;
}

export interface EdgeLine {
  x1: number;
  y1: number;
  x2: number;
  y2: number;
}

export interface Layout {
  boxes: Map<string, Box>;
  width: number;
  height: number;
}

const NODE_W = 132;
const NODE_H = 40;
const CELL_W = 170;
const CELL_H = 28;
const PAD = 12;
const TITLE = 22;
const GUTTER_X = 90;
const GUTTER_Y = 28;
const CELL_COLUMNS = 2;

export function sheetRanks(index: DocumentIndex): Map<string, number> {
  const ids = index.sheets.map((s) => s.id);
  const pos = new Map(ids.map((id, i) => [id, i] as const));
  const n = ids.length;
  const edges: [number, number][] = [];
  for (const e of index.doc.views.global.edges) {
    const a = pos.get(e.from);
    const b = pos.get(e.to);
    if (a !== undefined && b !== undefined && a !== b) edges.push([a, b]);
  }

  // strongly connected components via repeated reachability (sheet counts
  // are tiny, clarity beats asymptotics here)
  const reach: boolean[][] = Array.from({ length: n }, () => Array(n).fill(false));
  for (const [a, b] of edges) reach[a]![b] = true;
  for (let k = 0; k < n; k++) {
    for (let i = 0; i < n; i++) {
      if (!reach[i]![k]) continue;
      for (let j = 0; j < n; j++) {
        if (reach[k]![j]) reach[i]![j] = true;
      }
    }
  }
  const comp: number[] = Array(n).fill(-1);
  let ncomp = 0;
  for (let i = 0; i < n; i++) {
    if (comp[i] !== -1) continue;
    comp[i] = ncomp;
    for (let j = i + 1; j < n; j++) {
      if (reach[i]![j] && reach[j]![i]) comp[j] = ncomp;
    }
    ncomp++;
  }

  const compEdges = new Set<number>();
  for (const [a, b] of edges) {
    if (comp[a] !== comp[b]) compEdges.add(comp[a]! * ncomp + comp[b]!);
  }
  const rank: number[] = Array(ncomp).fill(0);
  const indegree: number[] = Array(ncomp).fill(0);
  for (const key of compEdges) indegree[key % ncomp] = (indegree[key % ncomp] ?? 0) + 1;
  const queue: number[] = [];
  for (let c = 0; c < ncomp; c++) if (indegree[c] === 0) queue.push(c);
  while (queue.length > 0) {
    const c = queue.pop()!;
    for (const key of compEdges) {
      if (Math.floor(key / ncomp) !== c) continue;
      const t = key % ncomp;
      rank[t] = Math.max(rank[t] ?? 0, (rank[c] ?? 0) + 1);
      indegree[t] = (indegree[t] ?? 0) - 1;
      if (indegree[t] === 0) queue.push(t);
    }
  }

  return new Map(ids.map((id, i) => [id, rank[comp[i]!]!] as const));
}

interface Sized {
  w: number;
  h: number;
}

function sheetSize(graph: VisibleGraph, sheetId: string): Sized {
  const blocks = graph.nodes.filter((n) => n.container === sheetId);
  if (blocks.length === 0) return { w: NODE_W, h: NODE_H };
  let width = NODE_W;
  let height = TITLE + PAD;
  for (const block of blocks) {
    const size = blockSize(graph, block);
    width = Math.max(width, size.w);
    height += size.h + PAD;
  }
  return { w: width + 2 * PAD, h: height };
}

function blockSize(graph: VisibleGraph, block: VisibleNode): Sized {
  if (!block.expanded) return { w: NODE_W, h: NODE_H };
  const cells = graph.nodes.filter((n) => n.container === block.id);
  if (cells.length === 0) return { w: NODE_W, h: NODE_H + TITLE };
  const columns = Math.min(CELL_COLUMNS, cells.length);
  const rows = Math.ceil(cells.length / columns);
  return {
    w: columns * (CELL_W + PAD) + PAD,
    h: TITLE + rows * (CELL_H + PAD) + PAD,
  };
}

export function layoutGraph(index: DocumentIndex, graph: VisibleGraph): Layout {
  const boxes = new Map<string, Box>();
  const ranks = sheetRanks(index);
  const sheets = graph.nodes.filter((n) => n.kind === "worksheet");

  const columns = new Map<number, VisibleNode[]>();
  for (const sheet of sheets) {
    const rank = ranks.get(sheet.id) ?? 0;
    const bucket = columns.get(rank) ?? [];
    bucket.push(sheet);
    columns.set(rank, bucket);
  }

  let x = GUTTER_X / 2;
  let totalHeight = 0;
  for (const rank of [...columns.keys()].sort((a, b) => a - b)) {
    const bucket = columns.get(rank)!;
    let y = GUTTER_Y;
    let columnWidth = 0;
    for (const sheet of bucket) {
      const size = sheetSize(graph, sheet.id);
      boxes.set(sheet.id, { node: sheet, x, y, w: size.w, h: size.h });
      placeSheetContents(graph, boxes, sheet.id, x, y);
      y += size.h + GUTTER_Y;
      columnWidth = Math.max(columnWidth, size.w);
    }
    totalHeight = Math.max(totalHeight, y);
    x += columnWidth + GUTTER_X;
  }

  return { boxes, width: Math.max(x, NODE_W + GUTTER_X), height: totalHeight + GUTTER_Y };
}

function placeSheetContents(
  graph: VisibleGraph,
  boxes: Map<string, Box>,
  sheetId: string,
  x: number,
  y: number,
): void {
  const blocks = graph.nodes.filter((n) => n.container === sheetId);
  let blockY = y + TITLE + PAD;
  for (const block of blocks) {
    const size = blockSize(graph, block);
    boxes.set(block.id, { node: block, x: x + PAD, y: blockY, w: size.w, h: size.h });
    if (block.expanded) {
      const cells = graph.nodes.filter((n) => n.container === block.id);
      cells.forEach((cell, i) => {
        const col = i % CELL_COLUMNS;
        const row = Math.floor(i / CELL_COLUMNS);
        boxes.set(cell.id, {
          node: cell,
          x: x + PAD + PAD + col * (CELL_W + PAD),
          y: blockY + TITLE + row * (CELL_H + PAD),
          w: CELL_W,
          h: CELL_H,
        });
      });
    }
    blockY += size.h + PAD;
  }
}

export function edgeLine(boxes: Map<string, Box>, from: string, to: string): EdgeLine | null {
  const a = boxes.get(from);
  const b = boxes.get(to);
  if (a === undefined || b === undefined) return null;
  const acx = a.x + a.w / 2;
  const bcx = b.x + b.w / 2;
  if (a.x + a.w <= b.x) {
    return { x1: a.x + a.w, y1: a.y + a.h / 2, x2: b.x, y2: b.y + b.h / 2 };
  }
  if (b.x + b.w <= a.x) {
    return { x1: a.x, y1: a.y + a.h / 2, x2: b.x + b.w, y2: b.y + b.h / 2 };
  }
  if (a.y + a.h <= b.y) {
    return { x1: acx, y1: a.y + a.h, x2: bcx, y2: b.y };
  }
  return { x1: acx, y1: a.y, x2: bcx, y2: b.y + b.h };
}
