import type {
  ApiErrorBody,
  EntitySummary,
  OrgBatchResponse,
  PredictionResponse,
  WhatIfDraft,
} from "./types.js";

export class ApiError extends Error {
  readonly body: ApiErrorBody;

  constructor(body: ApiErrorBody) {
    super(body.message);
    this.body = body;
  }
}

export type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

async function asJson<T>(response: Response): Promise<T> {
  if (!response.ok) {
    let body: ApiErrorBody;
    try {
      body = (await response.json()) as ApiErrorBody;
    } catch {
      body = { status: response.status, code: "internal", message: response.statusText };
    }
    throw new ApiError(body);
  }
  return (await response.json()) as T;
}

/** Thin typed client over the /v1 routes; fetch is injectable for tests. */
export class ApiClient {
  constructor(
    private readonly baseUrl: string,
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  inventorSummary(id: string, signal?: AbortSignal): Promise<EntitySummary> {
    return this.fetchFn(
      `${this.baseUrl}/v1/inventors/${encodeURIComponent(id)}/summary`,
      { signal },
    ).then((r) => asJson<EntitySummary>(r));
  }

  orgSummaries(ids: string[], signal?: AbortSignal): Promise<OrgBatchResponse> {
    const joined = ids.map(encodeURIComponent).join(",");
    return this.fetchFn(`${this.baseUrl}/v1/orgs/summary?ids=${joined}`, { signal }).then(
      (r) => asJson<OrgBatchResponse>(r),
    );
  }

  predictInline(draft: WhatIfDraft, signal?: AbortSignal): Promise<PredictionResponse> {
    return this.fetchFn(`${this.baseUrl}/v1/predict`, {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ inline: draft }),
      signal,
    }).then((r) => asJson<PredictionResponse>(r));
  }
}

/**
 * Keeps at most one request in flight per page section: starting a new
 * request aborts the previous one, and stale resolutions are dropped.
 */
export class LatestRequest {
  private controller: AbortController | null = null;
  private token = 0;

  async run<T>(task: (signal: AbortSignal) => Promise<T>): Promise<T | null> {
    this.controller?.abort();
    this.controller = new AbortController();
    const mine = ++this.token;
    try {
      const result = await task(this.controller.signal);
      return mine === this.token ? result : null;
    } catch (err) {
      if (mine !== this.token) return null; // superseded: swallow
      throw err;
    }
  }
}
