import { ApiClient, LatestRequest } from "../api.js";
import { barChart } from "../charts.js";
import { days } from "../format.js";
import type { EntitySummary, OrgBatchEntry } from "../types.js";

export const MAX_COMPARE = 4;

export interface OrgComparePageState {
  ids: string[];
  loading: boolean;
  entries: OrgBatchEntry[] | null;
  validationError: string | null;
  networkError: string | null;
}

function orgColumn(entry: OrgBatchEntry): HTMLElement {
  const column = document.createElement("div");
  column.className = "org-column";
  column.dataset.orgId = entry.id;

  if (entry.summary === undefined) {
    const empty = document.createElement("p");
    empty.className = "empty-state";
    empty.textContent =
      entry.error?.code === "entity_not_found"
        ? `organisation ${entry.id} not found`
        : entry.error?.message ?? "unavailable";
    column.appendChild(empty);
    return column;
  }
  const summary: EntitySummary = entry.summary;
  const heading = document.createElement("h3");
  heading.textContent = summary.display;
  column.appendChild(heading);

  const totals = document.createElement("p");
  totals.className = "totals";
  totals.textContent =
    `${summary.total_grants} grants, ${summary.total_pending_applications} pending`;
  column.appendChild(totals);
  if (summary.median_grant_lag_days !== undefined) {
    const lag = document.createElement("p");
    lag.className = "median-lag";
    lag.textContent = `median grant lag ${days(summary.median_grant_lag_days)}`;
    column.appendChild(lag);
  }

  column.appendChild(barChart(summary.per_year_filings, "Filings per year"));
  column.appendChild(barChart(summary.per_year_grants, "Grants per year"));

  const caption = document.createElement("h4");
  caption.textContent = "Significant inventors";
  column.appendChild(caption);
  const list = document.createElement("ol");
  list.className = "top-inventors";
  for (const person of summary.top_collaborators) {
    const item = document.createElement("li");
    item.textContent = `${person.display} (${person.shared_count})`;
    item.dataset.entityId = person.canonical_id;
    list.appendChild(item);
  }
  column.appendChild(list);
  return column;
}

/** Pure view: one column per requested organisation, in request order. */
export function renderOrgCompareView(state: OrgComparePageState): HTMLElement {
  const page = document.createElement("section");
  page.className = "page org-compare-page";

  if (state.validationError !== null) {
    const warn = document.createElement("p");
    warn.className = "validation-error";
    warn.textContent = state.validationError;
    page.appendChild(warn);
    return page;
  }
  if (state.loading) {
    const note = document.createElement("p");
    note.className = "loading";
    note.textContent = "loading…";
    page.appendChild(note);
    return page;
  }
  if (state.networkError !== null) {
    const failure = document.createElement("p");
    failure.className = "error-state";
    failure.textContent = `request failed: ${state.networkError}`;
    page.appendChild(failure);
    return page;
  }
  if (state.entries === null) return page;

  const grid = document.createElement("div");
  grid.className = state.entries.length > 1 ? "compare-grid with-dividers" : "compare-grid";
  grid.dataset.columns = String(state.entries.length);
  for (const entry of state.entries) {
    grid.appendChild(orgColumn(entry));
  }
  page.appendChild(grid);
  return page;
}

export class OrgComparePage {
  private state: OrgComparePageState = {
    ids: [],
    loading: false,
    entries: null,
    validationError: null,
    networkError: null,
  };
  private readonly section = new LatestRequest();

  constructor(
    private readonly root: HTMLElement,
    private readonly api: ApiClient,
  ) {}

  async show(ids: string[]): Promise<void> {
    if (ids.length < 1 || ids.length > MAX_COMPARE) {
      this.state = {
        ids,
        loading: false,
        entries: null,
        validationError: `select between 1 and ${MAX_COMPARE} organisations (got ${ids.length})`,
        networkError: null,
      };
      this.render();
      return;
    }
    this.state = { ids, loading: true, entries: null, validationError: null, networkError: null };
    this.render();
    try {
      const response = await this.section.run((signal) => this.api.orgSummaries(ids, signal));
      if (response === null) return;
      // Defensive re-order: columns must follow the requested id order.
      const byId = new Map(response.summaries.map((e) => [e.id, e]));
      const entries = ids.map((id) => byId.get(id) ?? { id });
      this.state = { ids, loading: false, entries, validationError: null, networkError: null };
    } catch (err) {
      const message = err instanceof Error ? err.message : String(err);
      this.state = { ids, loading: false, entries: null, validationError: null, networkError: message };
    }
    this.render();
  }

  private render(): void {
    this.root.replaceChildren(renderOrgCompareView(this.state));
  }
}
