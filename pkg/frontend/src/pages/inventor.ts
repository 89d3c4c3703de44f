import { ApiClient, ApiError, LatestRequest } from "../api.js";
import { confidenceBadge } from "../bands.js";
import { barChart } from "../charts.js";
import { dateOrPending, days } from "../format.js";
import type { EntitySummary, PatentRow } from "../types.js";

export interface InventorPageState {
  inventorId: string;
  loading: boolean;
  summary: EntitySummary | null;
  error: { kind: "not_found" } | { kind: "network"; message: string } | null;
}

function patentTable(rows: PatentRow[]): HTMLElement {
  const table = document.createElement("table");
  table.className = "patent-table";
  const head = table.createTHead().insertRow();
  for (const column of [
    "Title",
    "Filed",
    "Granted",
    "Predicted days",
    "Actual days",
    "Confidence",
  ]) {
    const th = document.createElement("th");
    th.textContent = column;
    head.appendChild(th);
  }
  const body = table.createTBody();
  for (const row of rows) {
    const tr = body.insertRow();
    tr.dataset.docNumber = row.doc_number;
    tr.insertCell().textContent = row.title;
    tr.insertCell().textContent = row.filing_date;
    tr.insertCell().textContent = dateOrPending(row.grant_date);
    tr.insertCell().textContent =
      row.predicted_days !== undefined ? days(row.predicted_days) : "—";
    tr.insertCell().textContent =
      row.grant_lag_days !== undefined ? days(row.grant_lag_days) : "—";
    const badgeCell = tr.insertCell();
    if (row.band !== undefined) {
      badgeCell.appendChild(confidenceBadge(row.band, row.confidence));
    } else {
      badgeCell.textContent = "—";
    }
  }
  return table;
}

/** Pure view of the inventor page state. */
export function renderInventorView(
  state: InventorPageState,
  onRetry: () => void,
): HTMLElement {
  const page = document.createElement("section");
  page.className = "page inventor-page";

  if (state.loading) {
    const note = document.createElement("p");
    note.className = "loading";
    note.textContent = "loading…";
    page.appendChild(note);
    return page;
  }
  if (state.error?.kind === "not_found") {
    const empty = document.createElement("p");
    empty.className = "empty-state";
    empty.textContent = "inventor not found";
    page.appendChild(empty);
    return page;
  }
  if (state.error?.kind === "network") {
    const failure = document.createElement("div");
    failure.className = "error-state";
    const message = document.createElement("p");
    message.textContent = `request failed: ${state.error.message}`;
    const retry = document.createElement("button");
    retry.className = "retry";
    retry.textContent = "Retry";
    retry.addEventListener("click", onRetry);
    failure.append(message, retry);
    page.appendChild(failure);
    return page;
  }
  const summary = state.summary;
  if (summary === null) return page;

  const heading = document.createElement("h2");
  heading.textContent = summary.display;
  page.appendChild(heading);

  const totals = document.createElement("p");
  totals.className = "totals";
  const median =
    summary.median_grant_lag_days !== undefined
      ? `, median grant lag ${days(summary.median_grant_lag_days)}`
      : "";
  totals.textContent =
    `${summary.total_grants} grants, ` +
    `${summary.total_pending_applications} pending applications${median}`;
  page.appendChild(totals);

  page.appendChild(barChart(summary.per_year_filings, "Filings per year"));
  page.appendChild(barChart(summary.per_year_grants, "Grants per year"));
  page.appendChild(patentTable(summary.patents ?? []));
  return page;
}

export class InventorPage {
  private state: InventorPageState = {
    inventorId: "",
    loading: false,
    summary: null,
    error: null,
  };
  private readonly section = new LatestRequest();

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
  ) {}

  async show(inventorId: string): Promise<void> {
    this.state = { inventorId, loading: true, summary: null, error: null };
    this.render();
    try {
      const summary = await this.section.run((signal) =>
        this.api.inventorSummary(inventorId, signal),
      );
      if (summary === null) return; // superseded by a newer navigation
      this.state = { inventorId, loading: false, summary, error: null };
    } catch (err) {
      if (err instanceof ApiError && err.body.status === 404) {
        this.state = { inventorId, loading: false, summary: null, error: { kind: "not_found" } };
      } else {
        const message = err instanceof Error ? err.message : String(err);
        this.state = {
          inventorId,
          loading: false,
          summary: null,
          error: { kind: "network", message },
        };
      }
    }
    this.render();
  }

  private render(): void {
    this.root.replaceChildren(
      renderInventorView(this.state, () => void this.show(this.state.inventorId)),
    );
  }
}
