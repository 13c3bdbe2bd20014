/** Shapes of the cellflow graph document (version "cellflow-graph/1"). */

export const GRAPH_VERSION = "cellflow-graph/1";

export type NodeKind = "workbook" | "worksheet" | "block" | "cell";

export interface DocNode {
  id: string;
  kind: NodeKind;
  label: string;
  parent?: string;
}

export interface DocEdge {
  from: string;
  to: string;
  approximate: boolean;
}

export interface AggregatedEdge {
  from: string;
  to: string;
  multiplicity: number;
  approximate: boolean;
}

export interface Smell {
  kind: "InterWorksheetCycle" | "AgainstTheStream" | "DisconnectedWorksheet" | "HeavyCoupling";
  subjects: string[];
  metrics: Record<string, number>;
  message: string;
}

export interface GraphDocument {
  version: string;
  workbook_name: string;
  nodes: DocNode[];
  cell_edges: DocEdge[];
  formula_cells?: string[];
  views: {
    global: { edges: AggregatedEdge[] };
    worksheets: Record<string, { edges: AggregatedEdge[] }>;
  };
  smells: Smell[];
  warnings: { kind: string; message: string }[];
}

export class DocumentError extends Error {}
