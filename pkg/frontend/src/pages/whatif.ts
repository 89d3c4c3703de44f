import { ApiClient, ApiError, LatestRequest } from "../api.js";
import { confidenceBadge } from "../bands.js";
import { approxMonths, days, interval } from "../format.js";
import type { PredictionResponse, WhatIfDraft } from "../types.js";

export interface HistoryEntry {
  draft: WhatIfDraft;
  result: PredictionResponse;
}

export interface WhatIfPageState {
  pending: boolean;
  validationError: string | null;
  apiError: string | null;
  latest: PredictionResponse | null;
  history: readonly HistoryEntry[];
}

export function validateDraft(draft: WhatIfDraft): string | null {
  if (draft.title.trim() === "") return "title must not be empty";
  if (draft.abstract_text.trim() === "") return "abstract must not be empty";
  return null;
}

function resultCard(result: PredictionResponse): HTMLElement {
  const card = document.createElement("div");
  card.className = "prediction-card";
  const point = document.createElement("p");
  point.className = "point-estimate";
  point.textContent = `${days(result.point_days)} (${approxMonths(result.point_days)})`;
  const range = document.createElement("p");
  range.className = "interval";
  range.textContent = `interval: ${interval(result.interval_low_days, result.interval_high_days)}`;
  card.append(point, range, confidenceBadge(result.band, result.confidence));
  return card;
}

/** Pure view of the what-if page state; the form itself lives in the page. */
export function renderWhatIfResults(state: WhatIfPageState): HTMLElement {
  const wrap = document.createElement("div");
  wrap.className = "whatif-results";

  if (state.validationError !== null) {
    const warn = document.createElement("p");
    warn.className = "validation-error";
    warn.textContent = state.validationError;
    wrap.appendChild(warn);
  }
  if (state.apiError !== null) {
    const failure = document.createElement("p");
    failure.className = "error-state";
    failure.textContent = state.apiError;
    wrap.appendChild(failure);
  }
  if (state.pending) {
    const note = document.createElement("p");
    note.className = "loading";
    note.textContent = "predicting…";
    wrap.appendChild(note);
  }
  if (state.latest !== null) {
    wrap.appendChild(resultCard(state.latest));
  }

  const historyHeading = document.createElement("h4");
  historyHeading.textContent = `Session history (${state.history.length})`;
  wrap.appendChild(historyHeading);
  const list = document.createElement("ol");
  list.className = "history";
  for (const entry of state.history) {
    const item = document.createElement("li");
    item.dataset.title = entry.draft.title;
    const label = document.createElement("span");
    label.textContent = `${entry.draft.title}: ${days(entry.result.point_days)} `;
    item.append(label, confidenceBadge(entry.result.band, entry.result.confidence));
    list.appendChild(item);
  }
  wrap.appendChild(list);
  return wrap;
}

export class WhatIfPage {
  private state: WhatIfPageState = {
    pending: false,
    validationError: null,
    apiError: null,
    latest: null,
    history: [],
  };
  private readonly section = new LatestRequest();
  private readonly results = document.createElement("div");

  constructor(
    root: HTMLElement,
    private readonly api: ApiClient,
  ) {
    // The form mounts once so typing survives re-renders; only the
    // results area is state-driven.
    root.replaceChildren(this.buildForm(), this.results);
    this.render();
  }

  get history(): readonly HistoryEntry[] {
    return this.state.history;
  }

  /** Client-side validation first; invalid drafts never reach the network. */
  async submit(draft: WhatIfDraft): Promise<void> {
    const problem = validateDraft(draft);
    if (problem !== null) {
      this.state = { ...this.state, pending: false, validationError: problem, apiError: null };
      this.render();
      return;
    }
    this.state = { ...this.state, pending: true, validationError: null, apiError: null };
    this.render();
    try {
      const result = await this.section.run((signal) => this.api.predictInline(draft, signal));
      if (result === null) return; // a newer submission superseded this one
      this.state = {
        ...this.state,
        pending: false,
        latest: result,
        history: [...this.state.history, { draft, result }],
      };
    } catch (err) {
      const message =
        err instanceof ApiError
          ? `${err.body.code}: ${err.body.message}`
          : err instanceof Error
            ? err.message
            : String(err);
      this.state = { ...this.state, pending: false, apiError: message };
    }
    this.render();
  }

  render(): void {
    this.results.replaceChildren(renderWhatIfResults(this.state));
  }

  private buildForm(): HTMLElement {
    const form = document.createElement("form");
    form.className = "whatif-form";
    form.noValidate = true;

    const fields: Array<[string, string, string]> = [
      ["title", "Title", "input"],
      ["abstract_text", "Abstract", "textarea"],
      ["claims", "Claims (one per line)", "textarea"],
      ["description_text", "Description", "textarea"],
      ["filing_date", "Filing date (YYYY-MM-DD)", "input"],
      ["cpc_codes", "CPC codes (comma separated)", "input"],
      ["inventors", "Inventors (comma separated)", "input"],
      ["assignees", "Assignees (comma separated)", "input"],
    ];
    for (const [name, label, element] of fields) {
      const row = document.createElement("label");
      row.className = "form-row";
      const caption = document.createElement("span");
      caption.textContent = label;
      const control = document.createElement(element) as HTMLInputElement;
      control.name = name;
      row.append(caption, control);
      form.appendChild(row);
    }
    const submit = document.createElement("button");
    submit.type = "submit";
    submit.textContent = "Predict";
    form.appendChild(submit);

    form.addEventListener("submit", (event) => {
      event.preventDefault();
      const value = (name: string): string =>
        (form.elements.namedItem(name) as HTMLInputElement | HTMLTextAreaElement).value;
      const csv = (name: string): string[] =>
        value(name).split(",").map((s) => s.trim()).filter((s) => s !== "");
      void this.submit({
        title: value("title"),
        abstract_text: value("abstract_text"),
        claims: value("claims").split("\n").map((s) => s.trim()).filter((s) => s !== ""),
        description_text: value("description_text"),
        filing_date: value("filing_date"),
        cpc_codes: csv("cpc_codes"),
        inventors: csv("inventors"),
        assignees: csv("assignees"),
      });
    });
    return form;
  }
}
