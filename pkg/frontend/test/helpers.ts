import { vi } from "vitest";

import type { FetchLike } from "../src/api.js";
import type { EntitySummary, PatentRow, PredictionResponse } from "../src/types.js";

export function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

export function errorResponse(status: number, code: string, message: string): Response {
  return jsonResponse({ status, code, message }, status);
}

/** Fetch stub that records calls and replays queued responses in order. */
export function fetchStub(...responses: Array<Response | Error>) {
  const calls: Array<{ url: string; init?: RequestInit }> = [];
  const fn: FetchLike = vi.fn(async (url: string, init?: RequestInit) => {
    calls.push({ url, init });
    const next = responses.shift();
    if (next === undefined) throw new Error(`unexpected fetch: ${url}`);
    if (next instanceof Error) throw next;
    return next;
  });
  return { fn, calls };
}

export function samplePrediction(overrides: Partial<PredictionResponse> = {}): PredictionResponse {
  return {
    point_days: 1095.4,
    interval_low_days: 800.2,
    interval_high_days: 1390.6,
    confidence: 0.5,
    band: "Amber",
    model_id: "m-abc123",
    ...overrides,
  };
}

export function samplePatentRow(overrides: Partial<PatentRow> = {}): PatentRow {
  return {
    doc_number: "7654321",
    doc_kind: "Grant",
    kind_code: "B2",
    title: "Adaptive cache prefetching",
    filing_date: "2015-03-01",
    publication_date: "2018-06-15",
    grant_date: "2018-06-15",
    grant_lag_days: 1202,
    cpc_sections: ["G"],
    n_claims: 3,
    predicted_days: 1150.5,
    confidence: 0.71,
    band: "Green",
    ...overrides,
  };
}

export function sampleInventorSummary(
  overrides: Partial<EntitySummary> = {},
): EntitySummary {
  return {
    entity: { kind: "Inventor", canonical_id: "mai-nguyen" },
    display: "Mai Nguyen",
    total_grants: 2,
    total_pending_applications: 1,
    per_year_filings: { "2013": 1, "2014": 1, "2015": 1 },
    per_year_grants: { "2017": 1, "2018": 1 },
    cpc_section_histogram: { G: 3 },
    top_collaborators: [
      { kind: "Inventor", canonical_id: "wei-zhang", display: "Wei Zhang", shared_count: 2 },
    ],
    median_grant_lag_days: 1202,
    patents: [],
    ...overrides,
  };
}
