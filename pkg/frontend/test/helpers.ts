import { readFileSync } from "node:fs";
import { join } from "node:path";

import { loadDocument, ViewerState } from "../src/state.js";

// vitest runs with the frontend directory as cwd; a plain path keeps this
// working in both the node and jsdom environments
export const EXAM_JSON = readFileSync(
  join(process.cwd(), "test", "fixtures", "exam_document.json"),
  "utf-8",
);

export function examState(): ViewerState {
  return loadDocument(EXAM_JSON);
}

export function emptyDocumentJson(): string {
  return JSON.stringify({
    version: "cellflow-graph/1",
    workbook_name: "blank",
    nodes: [{ id: "workbook", kind: "workbook", label: "blank" }],
    cell_edges: [],
    formula_cells: [],
    views: { global: { edges: [] }, worksheets: {} },
    smells: [],
    warnings: [],
  });
}
