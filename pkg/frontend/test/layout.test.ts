import { describe, expect, it } from "vitest";

import type { WindowData } from "../src/api.js";
import { CELL_X, layoutWindow } from "../src/layout.js";
import { renderSvg } from "../src/svg.js";
import type { ViewModel } from "../src/controller.js";

const win: WindowData = {
  range: [0, 2],
  vertices: [
    { id: "1@0", base: "1", level: 0 },
    { id: "2@1", base: "2", level: 1 },
    { id: "3@2", base: "3", level: 2 },
  ],
  arrows: [
    { id: "a@0", from: "1@0", to: "2@1", second_degree: 0 },
    { id: "g@1", from: "2@1", to: "3@2", second_degree: 1 },
  ],
};

function vm(overrides: Partial<ViewModel> = {}): ViewModel {
  return {
    window: win,
    slice: new Set(["1@0", "2@1"]),
    clickable: new Map([["1@0", "+"]]),
    pending: null,
    hammock: null,
    doubleSlice: null,
    classification: null,
    error: null,
    historyLength: 0,
    ...overrides,
  };
}

describe("layout", () => {
  it("is deterministic and level-monotone along x", () => {
    const a = layoutWindow(win);
    const b = layoutWindow(win);
    expect(a.nodes).toEqual(b.nodes);
    const xs = new Map(a.nodes.map((n) => [n.id, n.x]));
    expect(xs.get("2@1")! - xs.get("1@0")!).toBe(CELL_X);
    expect(xs.get("3@2")! - xs.get("2@1")!).toBe(CELL_X);
  });

  it("keeps a fixed row per base vertex", () => {
    const m = layoutWindow(win);
    const ys = m.nodes.map((n) => n.y);
    expect(new Set(ys).size).toBe(3);
  });
});

describe("svg rendering", () => {
  it("marks slice, clickable and dashed structure", () => {
    const svg = renderSvg(vm());
    expect(svg).toContain('data-vertex="1@0"');
    expect(svg).toContain('data-clickable="true"');
    expect(svg).toContain("stroke-dasharray");
    const sliceCount = (svg.match(/data-roles="[^"]*slice[^"]*"/g) ?? []).length;
    expect(sliceCount).toBeGreaterThanOrEqual(2);
  });

  it("overlays hammock multiplicities", () => {
    const svg = renderSvg(
      vm({
        hammock: {
          anchor: "1@0",
          direction: "forward",
          terminal: "3@2",
          multiplicities: { "1@0": 1, "2@1": 2, "3@2": 1 },
        },
      }),
    );
    expect(svg).toContain("x2");
    expect((svg.match(/hammock/g) ?? []).length).toBeGreaterThanOrEqual(3);
  });
});
