// Node-link SVG diagram of the interpreted graph query. Nodes keep the
// response order on a two-row zigzag so the handful of edges a query can
// have stay readable without a layout engine.

import { QueryNode, QueryRelation } from "./api.js";

const SVG_NS = "http://www.w3.org/2000/svg";
const NODE_W = 150;
const NODE_H = 54;
const COL_GAP = 46;
const ROW_GAP = 70;
const MARGIN = 16;
const EDGE_TRIM = 46;

type Point = { x: number; y: number };

function svgElement<K extends keyof SVGElementTagNameMap>(tag: K): SVGElementTagNameMap[K] {
  return document.createElementNS(SVG_NS, tag);
}

function center(index: number): Point {
  const x = MARGIN + index * (NODE_W + COL_GAP) + NODE_W / 2;
  const row = index % 2 === 0 ? 0 : 1;
  return { x, y: MARGIN + row * (NODE_H + ROW_GAP) + NODE_H / 2 };
}

// Endpoint pulled toward the other end so arrowheads stop at the box.
function trimmed(from: Point, to: Point): Point {
  const dx = to.x - from.x;
  const dy = to.y - from.y;
  const length = Math.hypot(dx, dy) || 1;
  return { x: from.x + (dx / length) * EDGE_TRIM, y: from.y + (dy / length) * EDGE_TRIM };
}

function arrowheadDefs(): SVGDefsElement {
  const defs = svgElement("defs");
  const marker = svgElement("marker");
  marker.setAttribute("id", "arrowhead");
  marker.setAttribute("markerWidth", "9");
  marker.setAttribute("markerHeight", "8");
  marker.setAttribute("refX", "8");
  marker.setAttribute("refY", "4");
  marker.setAttribute("orient", "auto");
  const tip = svgElement("path");
  tip.setAttribute("d", "M0,0 L8,4 L0,8 z");
  marker.appendChild(tip);
  defs.appendChild(marker);
  return defs;
}

function renderEdge(relation: QueryRelation, from: Point, to: Point): SVGGElement {
  const group = svgElement("g");
  group.setAttribute("class", "edge");
  group.setAttribute("data-source", relation.source);
  group.setAttribute("data-label", relation.label);
  group.setAttribute("data-target", relation.target);

  const start = trimmed(from, to);
  const end = trimmed(to, from);
  const line = svgElement("line");
  line.setAttribute("x1", String(start.x));
  line.setAttribute("y1", String(start.y));
  line.setAttribute("x2", String(end.x));
  line.setAttribute("y2", String(end.y));
  line.setAttribute("marker-end", "url(#arrowhead)");
  group.appendChild(line);

  const label = svgElement("text");
  label.setAttribute("class", "edge-label");
  label.setAttribute("x", String((start.x + end.x) / 2));
  label.setAttribute("y", String((start.y + end.y) / 2 - 6));
  label.setAttribute("text-anchor", "middle");
  label.textContent = relation.label;
  group.appendChild(label);
  return group;
}

function renderNode(node: QueryNode, at: Point): SVGGElement {
  const group = svgElement("g");
  group.setAttribute("class", node.answer ? "node answer" : "node");
  group.setAttribute("data-instance", node.instance);
  group.setAttribute("data-etype", node.etype);
  group.setAttribute("data-part", node.part);

  const box = svgElement("rect");
  box.setAttribute("x", String(at.x - NODE_W / 2));
  box.setAttribute("y", String(at.y - NODE_H / 2));
  box.setAttribute("width", String(NODE_W));
  box.setAttribute("height", String(NODE_H));
  box.setAttribute("rx", "6");
  group.appendChild(box);

  const title = svgElement("text");
  title.setAttribute("class", "node-instance");
  title.setAttribute("x", String(at.x));
  title.setAttribute("y", String(at.y - 6));
  title.setAttribute("text-anchor", "middle");
  title.textContent = node.instance;
  group.appendChild(title);

  const detail = svgElement("text");
  detail.setAttribute("class", "node-detail");
  detail.setAttribute("x", String(at.x));
  detail.setAttribute("y", String(at.y + 14));
  detail.setAttribute("text-anchor", "middle");
  detail.textContent = node.constraint != null ? `= "${node.constraint}"` : node.named_entity;
  group.appendChild(detail);
  return group;
}

export function renderDiagram(nodes: QueryNode[], relations: QueryRelation[]): SVGSVGElement {
  const svg = svgElement("svg");
  const width = 2 * MARGIN + Math.max(nodes.length, 1) * NODE_W + Math.max(nodes.length - 1, 0) * COL_GAP;
  const height = 2 * MARGIN + 2 * NODE_H + ROW_GAP;
  svg.setAttribute("class", "query-diagram");
  svg.setAttribute("viewBox", `0 0 ${width} ${height}`);
  svg.setAttribute("width", String(width));
  svg.setAttribute("height", String(height));
  svg.appendChild(arrowheadDefs());

  const placed = new Map<string, Point>();
  nodes.forEach((node, index) => placed.set(node.instance, center(index)));

  // Edges first so the boxes draw over the line ends.
  for (const relation of relations) {
    const from = placed.get(relation.source);
    const to = placed.get(relation.target);
    if (from && to) {
      svg.appendChild(renderEdge(relation, from, to));
    }
  }
  nodes.forEach((node, index) => svg.appendChild(renderNode(node, center(index))));
  return svg;
}
