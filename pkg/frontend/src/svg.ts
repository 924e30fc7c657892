// Pure SVG rendering of a view model: no DOM dependency, so the same code
// serves the browser (via innerHTML), the export button, and the tests.

import { layoutWindow, type LayoutModel } from "./layout.js";
import type { ViewModel } from "./controller.js";

const COLORS = {
  slice: "#9ecae1",
  complement: "#a1d99b",
  hammock: "#fdd0a2",
  plain: "#ffffff",
  pending: "#fee08b",
  edge: "#555555",
  terminal: "#e6550d",
};

function escapeXml(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;").replace(/"/g, "&quot;");
}

export function renderSvg(vm: ViewModel, layout?: LayoutModel): string {
  const m = layout ?? layoutWindow(vm.window);
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 ${m.width} ${m.height}" ` +
      `width="${m.width}" height="${m.height}" data-role="window">`,
  );
  parts.push(
    `<defs><marker id="arr" viewBox="0 0 8 8" refX="7" refY="4" markerWidth="6" ` +
      `markerHeight="6" orient="auto"><path d="M0,0 L8,4 L0,8 z" fill="${COLORS.edge}"/></marker></defs>`,
  );
  for (const e of m.edges) {
    const dx = e.x2 - e.x1;
    const dy = e.y2 - e.y1;
    const len = Math.hypot(dx, dy) || 1;
    const pad = 16;
    const x1 = e.x1 + (dx / len) * pad;
    const y1 = e.y1 + (dy / len) * pad;
    const x2 = e.x2 - (dx / len) * pad;
    const y2 = e.y2 - (dy / len) * pad;
    const dash = e.dashed ? ' stroke-dasharray="5,4"' : "";
    parts.push(
      `<line x1="${x1.toFixed(1)}" y1="${y1.toFixed(1)}" x2="${x2.toFixed(1)}" ` +
        `y2="${y2.toFixed(1)}" stroke="${COLORS.edge}" stroke-width="1.4"` +
        `${dash} marker-end="url(#arr)"/>`,
    );
  }
  const hammockSet = vm.hammock ? vm.hammock.multiplicities : {};
  const doubleSet = vm.doubleSlice ? new Set(vm.doubleSlice.vertices) : new Set<string>();
  const complementSet = vm.doubleSlice ? new Set(vm.doubleSlice.complement) : new Set<string>();
  for (const n of m.nodes) {
    let fill = COLORS.plain;
    const roles: string[] = [];
    if (vm.slice.has(n.id)) {
      fill = COLORS.slice;
      roles.push("slice");
    }
    if (complementSet.has(n.id)) {
      fill = COLORS.complement;
      roles.push("complement");
    } else if (doubleSet.has(n.id) && !vm.slice.has(n.id)) {
      fill = COLORS.complement;
      roles.push("double");
    }
    if (doubleSet.has(n.id)) roles.push("double-slice");
    if (n.id in hammockSet) {
      if (!vm.slice.has(n.id)) fill = COLORS.hammock;
      roles.push("hammock");
    }
    if (vm.pending === n.id) fill = COLORS.pending;
    const dir = vm.clickable.get(n.id);
    const clickable = dir !== undefined;
    const stroke = clickable ? "#08519c" : "#999999";
    const width = clickable ? 2.4 : 1.2;
    const opacity = clickable || vm.slice.has(n.id) || roles.length ? 1.0 : 0.55;
    parts.push(
      `<g data-vertex="${escapeXml(n.id)}" data-clickable="${clickable}"` +
        (dir ? ` data-dir="${dir}"` : "") +
        (roles.length ? ` data-roles="${roles.join(" ")}"` : "") +
        ` style="cursor:${clickable ? "pointer" : "default"}">` +
        `<circle cx="${n.x}" cy="${n.y}" r="15" fill="${fill}" stroke="${stroke}" ` +
        `stroke-width="${width}" opacity="${opacity}"/>` +
        `<text x="${n.x}" y="${n.y + 3}" font-size="9" text-anchor="middle">${escapeXml(n.id)}</text>` +
        (n.id in hammockSet && hammockSet[n.id] > 1
          ? `<text x="${n.x + 16}" y="${n.y - 10}" font-size="9" fill="${COLORS.terminal}">x${hammockSet[n.id]}</text>`
          : "") +
        `</g>`,
    );
  }
  parts.push("</svg>");
  return parts.join("\n");
}

export function exportSvg(vm: ViewModel): string {
  return `<?xml version="1.0" encoding="UTF-8"?>\n` + renderSvg(vm);
}
