// Typed client for the engine's HTTP JSON protocol. The UI talks to the
// backend exclusively through this module.

export type Mode = "reading" | "writing";

export interface Intent {
  kind: "exact" | "prefix" | "miss";
  api?: string;
  candidates?: string[];
  alternates?: string[];
}

export interface ParamDoc {
  name: string;
  type: string;
  description: string;
}

export interface ReturnValue {
  value: string;
  meaning: string;
}

export interface ReturnDoc {
  type: string;
  description: string;
  values: ReturnValue[];
}

export interface RelatedApi {
  name: string;
  relation: string;
}

export interface DocEntry {
  name: string;
  display_name: string;
  signature: string;
  summary: string;
  params: ParamDoc[];
  returns: ReturnDoc;
  related: RelatedApi[];
  category: string;
  source_url: string;
}

export interface RankedExample {
  id: string;
  title: string;
  source: string;
  score: number;
}

export interface ResolveResponse {
  intent: Intent;
  doc: DocEntry | null;
  examples: RankedExample[];
  elapsed_ms: number;
}

export interface SearchResponse {
  examples: RankedExample[];
}

/** Error bodies are {error, message}; code is kept machine-readable. */
export class ApiError extends Error {
  constructor(readonly code: string, message: string) {
    super(message);
    this.name = "ApiError";
  }
}

// Structural subset of Response so tests can stub fetch with plain objects.
export interface JsonResponse {
  ok: boolean;
  status: number;
  json(): Promise<unknown>;
}

export type FetchLike = (url: string, init?: RequestInit) => Promise<JsonResponse>;

const defaultFetch: FetchLike = (url, init) => fetch(url, init);

export class ApiClient {
  constructor(
    private readonly fetchImpl: FetchLike = defaultFetch,
    private readonly base: string = "",
  ) {}

  resolve(source: string, line: number, col: number, mode: Mode): Promise<ResolveResponse> {
    return this.post("/api/resolve", { source, line, col, mode }) as Promise<ResolveResponse>;
  }

  search(query: string, limit?: number): Promise<SearchResponse> {
    const body: Record<string, unknown> = { query };
    if (limit !== undefined) body.limit = limit;
    return this.post("/api/search", body) as Promise<SearchResponse>;
  }

  private async post(path: string, body: unknown): Promise<unknown> {
    const res = await this.fetchImpl(this.base + path, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    let data: unknown = null;
    try {
      data = await res.json();
    } catch {
      // non-JSON body; fall through to the status check
    }
    if (!res.ok) {
      const err = (data ?? {}) as { error?: string; message?: string };
      throw new ApiError(err.error ?? `http_${res.status}`, err.message ?? `HTTP ${res.status}`);
    }
    return data;
  }
}
