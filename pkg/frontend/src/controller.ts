// Session-driven explorer state. The controller mirrors the server: every
// interaction posts to the API, applies an optimistic marker, and on a 409
// or 422 rolls back to the authoritative state and surfaces the witness.

import {
  Api,
  ApiError,
  type Classification,
  type DoubleSliceData,
  type HammockData,
  type SessionState,
  type WindowData,
} from "./api.js";

export interface ViewModel {
  window: WindowData;
  slice: Set<string>;
  clickable: Map<string, "+" | "-">;
  pending: string | null;
  hammock: HammockData | null;
  doubleSlice: DoubleSliceData | null;
  classification: Classification | null;
  error: string | null;
  historyLength: number;
}

export type Listener = (vm: ViewModel) => void;

export class Explorer {
  private state!: SessionState;
  private win!: WindowData;
  private hammockOverlay: HammockData | null = null;
  private doubleOverlay: DoubleSliceData | null = null;
  private classificationPanel: Classification | null = null;
  private pending: string | null = null;
  private error: string | null = null;
  private listeners: Listener[] = [];

  constructor(private api: Api) {}

  async start(sessionId?: string): Promise<void> {
    this.state = sessionId
      ? await this.api.state(sessionId)
      : await this.api.createSession();
    this.win = await this.api.window(this.state.id);
    this.notify();
  }

  get sessionId(): string {
    return this.state.id;
  }

  onChange(fn: Listener): void {
    this.listeners.push(fn);
  }

  view(): ViewModel {
    const clickable = new Map<string, "+" | "-">();
    for (const m of this.state.legal_mutations) clickable.set(m.vertex, m.dir);
    return {
      window: this.win,
      slice: new Set(this.state.slice),
      clickable,
      pending: this.pending,
      hammock: this.hammockOverlay,
      doubleSlice: this.doubleOverlay,
      classification: this.classificationPanel,
      error: this.error,
      historyLength: this.state.history_length,
    };
  }

  private notify(): void {
    const vm = this.view();
    for (const fn of this.listeners) fn(vm);
  }

  stateHash(): string {
    return this.state.slice.slice().sort().join("|");
  }

  /** Click a vertex: a mutation request when it is a legal sink/source. */
  async clickVertex(vertex: string): Promise<boolean> {
    const dir = this.view().clickable.get(vertex);
    if (dir === undefined) return false; // greyed out
    this.pending = vertex;
    this.error = null;
    this.notify();
    try {
      this.state = await this.api.mutate(this.state.id, { vertex, dir });
      this.invalidateOverlays();
      return true;
    } catch (e) {
      // roll back to the authoritative state and surface the witness
      this.state = await this.api.state(this.state.id);
      this.error = e instanceof ApiError ? e.detail : String(e);
      return false;
    } finally {
      this.pending = null;
      this.notify();
    }
  }

  async undo(): Promise<boolean> {
    this.error = null;
    try {
      this.state = await this.api.undo(this.state.id);
      this.invalidateOverlays();
      this.notify();
      return true;
    } catch (e) {
      this.state = await this.api.state(this.state.id);
      this.error = e instanceof ApiError ? e.detail : String(e);
      this.notify();
      return false;
    }
  }

  async toggleHammock(vertex: string, dir: "forward" | "backward"): Promise<void> {
    if (this.hammockOverlay && this.hammockOverlay.anchor === vertex && this.hammockOverlay.direction === dir) {
      this.hammockOverlay = null;
      this.notify();
      return;
    }
    this.error = null;
    try {
      this.hammockOverlay = await this.api.hammock(this.state.id, vertex, dir);
    } catch (e) {
      this.error = e instanceof ApiError ? e.detail : String(e);
    }
    this.notify();
  }

  async toggleDoubleSlice(dir: "S+" | "-S"): Promise<void> {
    if (this.doubleOverlay && this.doubleOverlay.direction === dir) {
      this.doubleOverlay = null;
      this.notify();
      return;
    }
    this.error = null;
    try {
      this.doubleOverlay = await this.api.doubleSlice(this.state.id, dir);
    } catch (e) {
      this.error = e instanceof ApiError ? e.detail : String(e);
    }
    this.notify();
  }

  async loadClassification(): Promise<void> {
    try {
      this.classificationPanel = await this.api.classification(this.state.id);
    } catch (e) {
      this.error = e instanceof ApiError ? e.detail : String(e);
    }
    this.notify();
  }

  private invalidateOverlays(): void {
    // overlays depend on the slice; recompute lazily on next toggle
    this.doubleOverlay = null;
    this.hammockOverlay = null;
  }
}
