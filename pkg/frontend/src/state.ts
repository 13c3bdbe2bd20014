/** Viewer state and its transitions.
 *
 * All transitions return a fresh state and never touch the document.
 * Expansion is hierarchical: a block can only be expanded while its
 * worksheet is, and collapsing a worksheet folds its blocks back in, so
 * expand followed by collapse of the same node restores the prior state.
 */

import { DocumentIndex, parseDocument } from "./document.js";

export interface ViewerState {
  index: DocumentIndex;
  expanded: ReadonlySet<string>;
  selection: string | null;
  smellOverlay: boolean;
}

export function loadDocument(text: string): ViewerState {
  const index = parseDocument(text);
  return { index, expanded: new Set(), selection: null, smellOverlay: false };
}

function withExpanded(state: ViewerState, expanded: Set<string>): ViewerState {
  return { ...state, expanded };
}

export function expand(state: ViewerState, nodeId: string): ViewerState {
  const node = state.index.byId.get(nodeId);
  if (node === undefined || state.expanded.has(nodeId)) return state;
  if (node.kind === "worksheet") {
    const expanded = new Set(state.expanded);
    expanded.add(nodeId);
    return withExpanded(state, expanded);
  }
  if (node.kind === "block") {
    if (node.parent === undefined || !state.expanded.has(node.parent)) {
      return state; // a block opens only inside its expanded worksheet
    }
    const expanded = new Set(state.expanded);
    expanded.add(nodeId);
    return withExpanded(state, expanded);
  }
  return state; // cells and the workbook root do not expand
}

export function collapse(state: ViewerState, nodeId: string): ViewerState {
  if (!state.expanded.has(nodeId)) return state;
  const expanded = new Set(state.expanded);
  expanded.delete(nodeId);
  const node = state.index.byId.get(nodeId);
  if (node !== undefined && node.kind === "worksheet") {
    for (const child of state.index.children.get(nodeId) ?? []) {
      expanded.delete(child.id);
    }
  }
  return withExpanded(state, expanded);
}

export function toggle(state: ViewerState, nodeId: string): ViewerState {
  return state.expanded.has(nodeId) ? collapse(state, nodeId) : expand(state, nodeId);
}

export function select(state: ViewerState, nodeId: string | null): ViewerState {
  return { ...state, selection: nodeId };
}

export function toggleSmells(state: ViewerState): ViewerState {
  return { ...state, smellOverlay: !state.smellOverlay };
}
