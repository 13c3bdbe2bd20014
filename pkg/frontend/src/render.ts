/** SVG rendering.
 *
 * The renderer emits a standalone SVG string (styles embedded) so the
 * same output serves the live canvas, the tests, and file export. Edge
 * stroke width encodes multiplicity as 1 + ln(m), matching the
 * analyzer's DOT output.
 */

import { visibleGraph, VisibleEdge } from "./aggregate.js";
import { Box, edgeLine, layoutGraph } from "./layout.js";
import { ViewerState } from "./state.js";

const STYLE = `
  .node rect { fill: #ffffff; stroke: #4a5568; stroke-width: 1.2; rx: 4; }
  .node text { font: 12px sans-serif; fill: #1a202c; }
  .kind-worksheet > rect { fill: #ebf4ff; }
  .kind-worksheet.expanded > rect { fill: #f7fafc; stroke-dasharray: none; }
  .kind-block > rect { fill: #fefcbf; }
  .kind-block.expanded > rect { fill: #fffff0; }
  .kind-cell > rect { fill: #f0fff4; }
  .group-title { font-weight: bold; }
  .selected > rect { stroke: #2b6cb0; stroke-width: 2.5; }
  .badge-disconnected > rect { stroke: #c53030; stroke-width: 2.5; stroke-dasharray: 6 3; }
  .edge path { stroke: #718096; fill: none; }
  .edge.approximate path { stroke-dasharray: 5 4; }
  .edge.mark-cycle path { stroke: #dd6b20; }
  .edge.mark-against path { stroke: #c53030; }
  .edge.mark-heavy path { stroke: #6b46c1; }
  .edge text { font: 10px sans-serif; fill: #6b46c1; }
  .empty-note { font: 14px sans-serif; fill: #718096; }
`;

function escapeXml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

export function strokeWidth(multiplicity: number): number {
  return 1 + Math.log(Math.max(1, multiplicity));
}

function nodeClasses(box: Box, selection: string | null): string {
  const classes = ["node", `kind-${box.node.kind}`];
  if (box.node.expanded) classes.push("expanded");
  if (box.node.id === selection) classes.push("selected");
  for (const badge of box.node.badges) classes.push(`badge-${badge}`);
  return classes.join(" ");
}

function renderNode(box: Box, selection: string | null): string {
  const { node } = box;
  const label = escapeXml(node.label);
  const title = node.expanded || node.kind === "worksheet" || node.kind === "block"
    ? `<title>${escapeXml(node.id)}</title>`
    : "";
  const textY = node.expanded ? box.y + 15 : box.y + box.h / 2 + 4;
  const textClass = node.expanded ? ' class="group-title"' : "";
  return (
    `<g class="${nodeClasses(box, selection)}" data-node-id="${escapeXml(node.id)}">`
    + `<rect x="${box.x}" y="${box.y}" width="${box.w}" height="${box.h}" rx="4"/>`
    + `<text${textClass} x="${box.x + 8}" y="${textY}">${label}</text>`
    + title
    + `</g>`
  );
}

function renderEdge(edge: VisibleEdge, boxes: Map<string, Box>): string {
  const line = edgeLine(boxes, edge.from, edge.to);
  if (line === null) return "";
  const classes = ["edge"];
  if (edge.approximate) classes.push("approximate");
  for (const mark of edge.marks) classes.push(`mark-${mark}`);
  const width = strokeWidth(edge.multiplicity).toFixed(3);
  const mid = edge.couplingLabel !== null
    ? `<text x="${(line.x1 + line.x2) / 2}" y="${(line.y1 + line.y2) / 2 - 4}">`
      + `${escapeXml(edge.couplingLabel)}</text>`
    : "";
  return (
    `<g class="${classes.join(" ")}" data-edge="${escapeXml(edge.from)}->${escapeXml(edge.to)}">`
    + `<path d="M ${line.x1} ${line.y1} L ${line.x2} ${line.y2}"`
    + ` stroke-width="${width}" marker-end="url(#arrow)">`
    + `<title>${escapeXml(`${edge.from} -> ${edge.to} (x${edge.multiplicity})`)}</title></path>`
    + mid
    + `</g>`
  );
}

export function renderSvg(state: ViewerState): string {
  const graph = visibleGraph(state);
  const layout = layoutGraph(state.index, graph);

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${layout.width} ${layout.height}"`
    + ` width="${layout.width}" height="${layout.height}" data-workbook="${escapeXml(state.index.doc.workbook_name)}">`,
  );
  parts.push(`<style>${STYLE}</style>`);
  parts.push(
    '<defs><marker id="arrow" viewBox="0 0 10 10" refX="9" refY="5" markerWidth="7"'
    + ' markerHeight="7" orient="auto-start-reverse">'
    + '<path d="M 0 0 L 10 5 L 0 10 z" fill="#718096"/></marker></defs>',
  );

  if (graph.nodes.length === 0) {
    parts.push(
      `<text class="empty-note" x="20" y="30">workbook "${escapeXml(state.index.doc.workbook_name)}"`
      + ` contains no worksheets</text>`,
    );
  } else {
    const containers = graph.nodes.filter((n) => n.expanded);
    const leaves = graph.nodes.filter((n) => !n.expanded);
    for (const node of containers) {
      parts.push(renderNode(layout.boxes.get(node.id)!, state.selection));
    }
    for (const edge of graph.edges) {
      parts.push(renderEdge(edge, layout.boxes));
    }
    for (const node of leaves) {
      parts.push(renderNode(layout.boxes.get(node.id)!, state.selection));
    }
  }
  parts.push("</svg>");
  return parts.join("\n");
}
