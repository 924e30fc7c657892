// Grid layout: levels run along the horizontal axis, and every base vertex
// keeps a fixed row, so mutations only move nodes horizontally and the
// picture matches the usual hand-drawn figures.

import type { WindowData } from "./api.js";

export interface NodePosition {
  id: string;
  base: string;
  level: number;
  x: number;
  y: number;
}

export interface EdgeSegment {
  id: string;
  from: string;
  to: string;
  dashed: boolean;
  x1: number;
  y1: number;
  x2: number;
  y2: number;
}

export interface LayoutModel {
  nodes: NodePosition[];
  edges: EdgeSegment[];
  width: number;
  height: number;
  byId: Map<string, NodePosition>;
}

export const CELL_X = 84;
export const CELL_Y = 64;
export const MARGIN = 48;

export function layoutWindow(win: WindowData): LayoutModel {
  const bases = Array.from(new Set(win.vertices.map((v) => v.base))).sort();
  const row = new Map(bases.map((b, i) => [b, i]));
  const lo = Math.min(...win.vertices.map((v) => v.level));
  const nodes: NodePosition[] = win.vertices
    .slice()
    .sort((a, b) => (a.level - b.level) || a.base.localeCompare(b.base))
    .map((v) => ({
      id: v.id,
      base: v.base,
      level: v.level,
      x: MARGIN + (v.level - lo) * CELL_X,
      y: MARGIN + (row.get(v.base) ?? 0) * CELL_Y,
    }));
  const byId = new Map(nodes.map((n) => [n.id, n]));
  const edges: EdgeSegment[] = win.arrows.flatMap((a) => {
    const s = byId.get(a.from);
    const t = byId.get(a.to);
    if (!s || !t) return [];
    return [
      {
        id: a.id,
        from: a.from,
        to: a.to,
        dashed: a.second_degree === 1,
        x1: s.x,
        y1: s.y,
        x2: t.x,
        y2: t.y,
      },
    ];
  });
  const width = Math.max(...nodes.map((n) => n.x)) + MARGIN;
  const height = Math.max(...nodes.map((n) => n.y)) + MARGIN;
  return { nodes, edges, width, height, byId };
}
