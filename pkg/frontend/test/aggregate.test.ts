import { describe, expect, it } from "vitest";

import { crossSheetTotal, visibleGraph } from "../src/aggregate.js";
import { blocksOf } from "../src/document.js";
import { expand, toggleSmells, ViewerState } from "../src/state.js";

import { examState } from "./helpers.js";

function expandAll(state: ViewerState): ViewerState {
  for (const sheet of state.index.sheets) {
    state = expand(state, sheet.id);
    for (const block of blocksOf(state.index, sheet.id)) {
      state = expand(state, block.id);
    }
  }
  return state;
}

describe("visibleGraph", () => {
  it("renders six worksheet nodes at the global level", () => {
    const graph = visibleGraph(examState());
    expect(graph.nodes).toHaveLength(6);
    expect(graph.nodes.every((n) => n.kind === "worksheet")).toBe(true);
  });

  it("matches the document's global aggregate exactly", () => {
    const state = examState();
    const graph = visibleGraph(state);
    const got = new Map(graph.edges.map((e) => [`${e.from}>${e.to}`, e.multiplicity]));
    const expected = new Map(
      state.index.doc.views.global.edges.map((e) => [`${e.from}>${e.to}`, e.multiplicity]),
    );
    expect(got).toEqual(expected);
  });

  it("expanding a worksheet swaps it for its blocks", () => {
    const state = expand(examState(), "sheet:exam");
    const graph = visibleGraph(state);
    const exam = graph.nodes.find((n) => n.id === "sheet:exam")!;
    expect(exam.expanded).toBe(true);
    const blocks = graph.nodes.filter((n) => n.container === "sheet:exam");
    expect(blocks.length).toBeGreaterThan(0);
    // edges re-attach to the blocks, none terminate at the open sheet frame
    for (const edge of graph.edges) {
      expect(edge.from).not.toBe("sheet:exam");
      expect(edge.to).not.toBe("sheet:exam");
    }
  });

  it("expanding a block reveals its formula cells", () => {
    let state = expand(examState(), "sheet:exam");
    state = expand(state, "block:exam!A1:C6");
    const graph = visibleGraph(state);
    const cells = graph.nodes.filter((n) => n.kind === "cell");
    expect(cells.length).toBeGreaterThan(0);
    expect(cells.some((n) => n.id === "cell:exam!C2")).toBe(true);
  });

  it("conserves cross-territory multiplicity under every expansion", () => {
    const base = examState();
    const states = [
      base,
      expand(base, "sheet:exam"),
      expand(expand(base, "sheet:exam"), "block:exam!A1:C6"),
      expand(expand(base, "sheet:exam"), "sheet:labwork"),
      expandAll(base),
    ];
    for (const state of states) {
      for (const e of base.index.doc.views.global.edges) {
        expect(crossSheetTotal(state, e.from, e.to)).toBe(e.multiplicity);
      }
    }
  });

  it("keeps view projections free of invented edges", () => {
    const state = expandAll(examState());
    const graph = visibleGraph(state);
    // at full expansion every edge is an original cell edge
    const original = new Set(
      state.index.doc.cell_edges.map((e) => `${e.from}>${e.to}`),
    );
    for (const edge of graph.edges) {
      expect(edge.multiplicity).toBe(1);
      expect(original.has(`${edge.from}>${edge.to}`)).toBe(true);
    }
  });
});

describe("smell overlay", () => {
  it("marks the disconnected sheet and the loop edges", () => {
    const state = toggleSmells(examState());
    const graph = visibleGraph(state);
    const osiris = graph.nodes.find((n) => n.id === "sheet:lab-osiris")!;
    expect(osiris.badges).toContain("disconnected");
    const loopEdges = graph.edges.filter((e) => e.marks.includes("cycle"));
    const pairs = new Set(loopEdges.map((e) => `${e.from}>${e.to}`));
    expect(pairs).toEqual(new Set(["sheet:exam>sheet:labwork", "sheet:labwork>sheet:exam"]));
  });

  it("is empty when the overlay is off", () => {
    const graph = visibleGraph(examState());
    expect(graph.nodes.every((n) => n.badges.length === 0)).toBe(true);
    expect(graph.edges.every((e) => e.marks.length === 0)).toBe(true);
  });

  it("passes the coupling metric through to heavy edges", () => {
    const state = examState();
    const doc = JSON.parse(JSON.stringify(state.index.doc));
    doc.smells = [
      {
        kind: "HeavyCoupling",
        subjects: ["grades", "overview"],
        metrics: { coupling: 10 },
        message: "",
      },
    ];
    const heavyState = toggleSmells({
      ...state,
      index: { ...state.index, doc },
    });
    const graph = visibleGraph(heavyState);
    const marked = graph.edges.find((e) => e.marks.includes("heavy"));
    expect(marked?.couplingLabel).toBe("coupling 10");
  });
});
