// Typed client for the session API. The fetch function is injectable so the
// controller can be driven in tests or behind a proxy.

export interface Mutation {
  vertex: string;
  dir: "+" | "-";
}

export interface SessionState {
  id: string;
  kind: string;
  range: [number, number];
  side: string;
  slice: string[];
  legal_mutations: Mutation[];
  history_length: number;
  n: number;
  dual_top: number;
}

export interface WindowVertex {
  id: string;
  base: string;
  level: number;
}

export interface WindowArrow {
  id: string;
  from: string;
  to: string;
  second_degree: number;
}

export interface WindowData {
  range: [number, number];
  vertices: WindowVertex[];
  arrows: WindowArrow[];
}

export interface HammockData {
  anchor: string;
  direction: string;
  terminal: string;
  multiplicities: Record<string, number>;
}

export interface DoubleSliceData {
  vertices: string[];
  slice: string[];
  complement: string[];
  direction: string;
}

export interface Classification {
  verdict: string;
  coxeter_index: number | null;
  q_estimate: string;
  radius: number | null;
  describe: string;
}

export class ApiError extends Error {
  constructor(public status: number, public detail: string) {
    super(`${status}: ${detail}`);
  }
}

type FetchLike = (url: string, init?: RequestInit) => Promise<Response>;

export class Api {
  constructor(
    private baseUrl: string,
    private fetchFn: FetchLike = (u, i) => fetch(u, i),
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const res = await this.fetchFn(this.baseUrl + path, init);
    const body = await res.json().catch(() => ({}));
    if (!res.ok) {
      const detail =
        typeof body === "object" && body !== null && "detail" in body
          ? String((body as { detail: unknown }).detail)
          : res.statusText;
      throw new ApiError(res.status, detail);
    }
    return body as T;
  }

  createSession(params: Record<string, unknown> = {}): Promise<SessionState> {
    return this.request("/session", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(params),
    });
  }

  state(id: string): Promise<SessionState> {
    return this.request(`/session/${id}/state`);
  }

  window(id: string): Promise<WindowData> {
    return this.request(`/session/${id}/window`);
  }

  mutate(id: string, m: Mutation): Promise<SessionState> {
    return this.request(`/session/${id}/mutate`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(m),
    });
  }

  undo(id: string): Promise<SessionState> {
    return this.request(`/session/${id}/undo`, { method: "POST" });
  }

  hammock(id: string, vertex: string, dir: string): Promise<HammockData> {
    const q = new URLSearchParams({ vertex, dir });
    return this.request(`/session/${id}/hammock?${q}`);
  }

  doubleSlice(id: string, dir: string): Promise<DoubleSliceData> {
    const q = new URLSearchParams({ dir });
    return this.request(`/session/${id}/double-slice?${q}`);
  }

  classification(id: string): Promise<Classification> {
    return this.request(`/session/${id}/classification`);
  }
}
