/** Parsing, validation and indexing of a graph document.
 *
 * The loaded document is deep-frozen: every later operation is a pure
 * function of (document, interaction history).
 */

import {
  DocNode,
  DocumentError,
  GraphDocument,
  GRAPH_VERSION,
} from "./types.js";

export interface DocumentIndex {
  doc: GraphDocument;
  byId: Map<string, DocNode>;
  children: Map<string, DocNode[]>;
  sheets: DocNode[];
  /** worksheet node id owning any node (itself for worksheet nodes) */
  sheetOf: Map<string, string>;
}

function deepFreeze<T>(value: T): T {
  if (value !== null && typeof value === "object" && !Object.isFrozen(value)) {
    Object.freeze(value);
    for (const key of Object.keys(value as object)) {
      deepFreeze((value as Record<string, unknown>)[key]);
    }
  }
  return value;
}

export function parseDocument(text: string): DocumentIndex {
  let raw: unknown;
  try {
    raw = JSON.parse(text);
  } catch (err) {
    throw new DocumentError(`not valid JSON: ${(err as Error).message}`);
  }
  if (typeof raw !== "object" || raw === null) {
    throw new DocumentError("document must be a JSON object");
  }
  const doc = raw as GraphDocument;
  if (doc.version !== GRAPH_VERSION) {
    throw new DocumentError(
      `unsupported document version ${JSON.stringify(doc.version ?? null)}; expected "${GRAPH_VERSION}"`,
    );
  }
  if (!Array.isArray(doc.nodes) || !Array.isArray(doc.cell_edges)) {
    throw new DocumentError("document is missing nodes or cell_edges");
  }
  return indexDocument(deepFreeze(doc));
}

export function indexDocument(doc: GraphDocument): DocumentIndex {
  const byId = new Map<string, DocNode>();
  const children = new Map<string, DocNode[]>();
  for (const node of doc.nodes) {
    if (byId.has(node.id)) {
      throw new DocumentError(`duplicate node id: ${node.id}`);
    }
    byId.set(node.id, node);
  }
  for (const node of doc.nodes) {
    if (node.parent !== undefined) {
      if (!byId.has(node.parent)) {
        throw new DocumentError(`node ${node.id} has unknown parent ${node.parent}`);
      }
      const siblings = children.get(node.parent) ?? [];
      siblings.push(node);
      children.set(node.parent, siblings);
    }
  }
  for (const edge of doc.cell_edges) {
    if (!byId.has(edge.from) || !byId.has(edge.to)) {
      throw new DocumentError(`edge references unknown node: ${edge.from} -> ${edge.to}`);
    }
  }

  const sheets = doc.nodes.filter((n) => n.kind === "worksheet");
  const sheetOf = new Map<string, string>();
  const resolveSheet = (node: DocNode): string => {
    const cached = sheetOf.get(node.id);
    if (cached !== undefined) return cached;
    let owner: string;
    if (node.kind === "worksheet") {
      owner = node.id;
    } else if (node.parent === undefined) {
      owner = node.id; // the workbook root; never an edge endpoint
    } else {
      owner = resolveSheet(byId.get(node.parent)!);
    }
    sheetOf.set(node.id, owner);
    return owner;
  };
  for (const node of doc.nodes) resolveSheet(node);

  return { doc, byId, children, sheets, sheetOf };
}

export function blocksOf(index: DocumentIndex, sheetId: string): DocNode[] {
  return (index.children.get(sheetId) ?? []).filter((n) => n.kind === "block");
}

export function cellsOf(index: DocumentIndex, blockId: string): DocNode[] {
  return (index.children.get(blockId) ?? []).filter((n) => n.kind === "cell");
}
