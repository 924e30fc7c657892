// Scripted end-to-end test against a live serve process: loads the worked
// six-vertex example session, clicks the (5,0) source, asserts the mutated
// slice, undoes back, and counts the double-slice overlay.

import { spawn, type ChildProcess } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { Api } from "../src/api.js";
import { Explorer } from "../src/controller.js";
import { renderSvg } from "../src/svg.js";

const PORT = 8961;
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;

async function waitReady(): Promise<void> {
  for (let i = 0; i < 120; i++) {
    try {
      const res = await fetch(`${BASE}/base`);
      if (res.ok) return;
    } catch {
      // not up yet
    }
    await new Promise((r) => setTimeout(r, 250));
  }
  throw new Error("server did not come up");
}

beforeAll(async () => {
  server = spawn(
    "python3",
    ["-m", "qslice.cli", "serve", "../fixtures/a4-auslander.json", "--port", String(PORT)],
    { cwd: new URL("..", import.meta.url).pathname, stdio: "ignore" },
  );
  await waitReady();
}, 60000);

afterAll(() => {
  server?.kill();
});

const S1 = ["1@0", "2@1", "3@2", "4@2", "5@0", "6@1"].sort().join("|");
const S4 = ["1@0", "2@1", "3@2", "4@2", "5@3", "6@1"].sort().join("|");

describe("explorer against a live session", () => {
  it("mutates at (5,0), undoes, and overlays the double slice", async () => {
    const explorer = new Explorer(new Api(BASE));
    await explorer.start();
    expect(explorer.stateHash()).toBe(S1);

    // the homogeneous slice's sources are clickable, interior vertices not
    const vm0 = explorer.view();
    expect(vm0.clickable.get("5@0")).toBe("+");
    expect(vm0.clickable.has("2@1")).toBe(false);

    const okClick = await explorer.clickVertex("5@0");
    expect(okClick).toBe(true);
    expect(explorer.stateHash()).toBe(S4);

    // clicking a non-clickable vertex is a no-op (no server round trip)
    const noop = await explorer.clickVertex("2@1");
    expect(noop).toBe(false);
    expect(explorer.stateHash()).toBe(S4);

    const okUndo = await explorer.undo();
    expect(okUndo).toBe(true);
    expect(explorer.stateHash()).toBe(S1);

    await explorer.toggleDoubleSlice("S+");
    const vm = explorer.view();
    expect(vm.doubleSlice).not.toBeNull();
    expect(vm.doubleSlice!.vertices.length).toBe(10);

    // the rendered overlay shades exactly the 10 double-slice vertices
    const svg = renderSvg(vm);
    const shaded = (svg.match(/data-roles="[^"]*double-slice[^"]*"/g) ?? []).length;
    expect(shaded).toBe(10);

    // refresh restores from the session id alone
    const resumed = new Explorer(new Api(BASE));
    await resumed.start(explorer.sessionId);
    expect(resumed.stateHash()).toBe(S1);
  }, 120000);

  it("surfaces witnesses and rolls back on refused mutations", async () => {
    const explorer = new Explorer(new Api(BASE));
    await explorer.start();
    // force an illegal request by bypassing the clickable filter
    const api = new Api(BASE);
    let refused = false;
    try {
      await api.mutate(explorer.sessionId, { vertex: "2@1", dir: "+" });
    } catch (e) {
      refused = true;
      expect(String(e)).toContain("409");
    }
    expect(refused).toBe(true);
    // the controller state still matches the server
    const fresh = await api.state(explorer.sessionId);
    expect(fresh.slice.slice().sort().join("|")).toBe(explorer.stateHash());
  }, 60000);

  it("shows the classification panel", async () => {
    const explorer = new Explorer(new Api(BASE));
    await explorer.start();
    await explorer.loadClassification();
    const vm = explorer.view();
    expect(vm.classification?.verdict).toBe("finite");
    expect(vm.classification?.coxeter_index).toBe(2);
    expect(vm.classification?.describe).toContain("Coxeter index 2");
  }, 120000);
});
