/** Payload shapes of the /v1 API. The UI never mutates these. */

export type Band = "Green" | "Amber" | "Red";

export interface ApiErrorBody {
  status: number;
  code: string;
  message: string;
}

export interface PredictionResponse {
  point_days: number;
  interval_low_days: number;
  interval_high_days: number;
  confidence: number;
  band: Band;
  model_id: string;
}

export interface EntityRef {
  kind: "Inventor" | "Organisation";
  canonical_id: string;
}

export interface Collaborator extends EntityRef {
  display: string;
  shared_count: number;
}

export interface PatentRow {
  doc_number: string;
  doc_kind: "Grant" | "Application";
  kind_code: string;
  title: string;
  filing_date: string;
  publication_date: string;
  grant_date?: string;
  grant_lag_days?: number;
  cpc_sections: string[];
  n_claims: number;
  predicted_days?: number;
  confidence?: number;
  band?: Band;
}

export interface EntitySummary {
  entity: EntityRef;
  display: string;
  total_grants: number;
  total_pending_applications: number;
  per_year_filings: Record<string, number>;
  per_year_grants: Record<string, number>;
  cpc_section_histogram: Record<string, number>;
  top_collaborators: Collaborator[];
  median_grant_lag_days?: number;
  patents?: PatentRow[];
}

export interface OrgBatchEntry {
  id: string;
  summary?: EntitySummary;
  error?: ApiErrorBody;
}

export interface OrgBatchResponse {
  summaries: OrgBatchEntry[];
}

export interface WhatIfDraft {
  title: string;
  abstract_text: string;
  claims: string[];
  description_text: string;
  filing_date: string;
  cpc_codes: string[];
  inventors: string[];
  assignees: string[];
}
