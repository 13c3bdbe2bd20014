/** Browser entry point: file loading, drill-down interaction, smell
 * overlay toggle and image export. */

import { downloadPng, downloadSvg } from "./exportimg.js";
import { renderSvg } from "./render.js";
import { collapse, loadDocument, select, toggle, toggleSmells, ViewerState } from "./state.js";
import { DocumentError } from "./types.js";

let state: ViewerState | null = null;

function byId<T extends HTMLElement>(id: string): T {
  return document.getElementById(id) as T;
}

function showError(message: string | null): void {
  const panel = byId<HTMLDivElement>("error-panel");
  panel.textContent = message ?? "";
  panel.hidden = message === null;
}

function redraw(): void {
  const canvas = byId<HTMLDivElement>("canvas");
  const hint = byId<HTMLParagraphElement>("hint");
  if (state === null) {
    canvas.innerHTML = "";
    hint.hidden = false;
    return;
  }
  hint.hidden = true;
  canvas.innerHTML = renderSvg(state);
  byId<HTMLButtonElement>("btn-smells").classList.toggle("active", state.smellOverlay);
  byId<HTMLSpanElement>("doc-name").textContent = state.index.doc.workbook_name;
  const smellCount = state.index.doc.smells.length;
  byId<HTMLSpanElement>("smell-count").textContent =
    smellCount === 0 ? "no smells" : `${smellCount} smell${smellCount === 1 ? "" : "s"}`;
}

export function loadText(text: string): void {
  try {
    state = loadDocument(text);
    showError(null);
  } catch (err) {
    state = null;
    showError(err instanceof DocumentError ? err.message : String(err));
  }
  redraw();
}

export function getState(): ViewerState | null {
  return state;
}

function wireUp(): void {
  byId<HTMLInputElement>("file-input").addEventListener("change", (event) => {
    const input = event.target as HTMLInputElement;
    const file = input.files?.[0];
    if (file === undefined) return;
    file.text().then(loadText);
  });

  const canvas = byId<HTMLDivElement>("canvas");
  canvas.addEventListener("click", (event) => {
    if (state === null) return;
    const target = (event.target as Element).closest("[data-node-id]");
    if (target === null) return;
    const nodeId = target.getAttribute("data-node-id")!;
    state = event.altKey ? collapse(state, nodeId) : toggle(state, nodeId);
    state = select(state, nodeId);
    redraw();
  });

  byId<HTMLButtonElement>("btn-smells").addEventListener("click", () => {
    if (state === null) return;
    state = toggleSmells(state);
    redraw();
  });
  byId<HTMLButtonElement>("btn-svg").addEventListener("click", () => {
    if (state !== null) downloadSvg(state);
  });
  byId<HTMLButtonElement>("btn-png").addEventListener("click", () => {
    if (state !== null) void downloadPng(state);
  });
  byId<HTMLButtonElement>("btn-reset").addEventListener("click", () => {
    if (state === null) return;
    state = { ...state, expanded: new Set(), selection: null };
    redraw();
  });

  document.addEventListener("dragover", (event) => event.preventDefault());
  document.addEventListener("drop", (event) => {
    event.preventDefault();
    const file = event.dataTransfer?.files?.[0];
    if (file !== undefined) file.text().then(loadText);
  });
}

wireUp();
redraw();
