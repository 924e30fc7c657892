// Browser entry: wires the controller to the DOM. The server is the single
// source of truth; a refresh restores everything from the session id kept
// in the URL hash.

import { Api } from "./api.js";
import { Explorer } from "./controller.js";
import { renderSvg, exportSvg } from "./svg.js";

const apiBase = (window as unknown as { QSLICE_API?: string }).QSLICE_API ?? "";

async function boot(): Promise<void> {
  const api = new Api(apiBase);
  const explorer = new Explorer(api);
  const host = document.getElementById("window")!;
  const status = document.getElementById("status")!;
  const classification = document.getElementById("classification")!;

  explorer.onChange((vm) => {
    host.innerHTML = renderSvg(vm);
    status.textContent = vm.error
      ? `refused: ${vm.error}`
      : `slice: ${[...vm.slice].sort().join(", ")}  (history ${vm.historyLength})`;
    if (vm.classification) {
      classification.textContent = vm.classification.describe;
    }
  });

  host.addEventListener("click", (ev) => {
    const g = (ev.target as Element).closest("[data-vertex]");
    if (!g) return;
    const vertex = g.getAttribute("data-vertex")!;
    if (ev.shiftKey) {
      void explorer.toggleHammock(vertex, ev.altKey ? "backward" : "forward");
    } else if (g.getAttribute("data-clickable") === "true") {
      void explorer.clickVertex(vertex);
    }
  });

  document.getElementById("undo")!.addEventListener("click", () => void explorer.undo());
  document.getElementById("double-slice")!.addEventListener("click", () => void explorer.toggleDoubleSlice("S+"));
  document.getElementById("double-slice-back")!.addEventListener("click", () => void explorer.toggleDoubleSlice("-S"));
  document.getElementById("export")!.addEventListener("click", () => {
    const blob = new Blob([exportSvg(explorer.view())], { type: "image/svg+xml" });
    const a = document.createElement("a");
    a.href = URL.createObjectURL(blob);
    a.download = "window.svg";
    a.click();
    URL.revokeObjectURL(a.href);
  });

  const existing = window.location.hash.slice(1) || undefined;
  await explorer.start(existing);
  window.location.hash = explorer.sessionId;
  void explorer.loadClassification();
}

void boot();
