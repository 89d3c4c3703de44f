import type { Band } from "./types.js";

/**
 * Band-to-colour mapping, bijective and shared by every page. The band
 * itself always comes from the API (thresholds 0.6/0.4 live server-side);
 * the UI only translates it to a colour.
 */
export const BAND_CLASS: Record<Band, string> = {
  Green: "badge-green",
  Amber: "badge-amber",
  Red: "badge-red",
};

export const BAND_COLOUR: Record<Band, string> = {
  Green: "#2e7d32",
  Amber: "#f9a825",
  Red: "#c62828",
};

export function confidenceBadge(band: Band, confidence?: number): HTMLElement {
  const badge = document.createElement("span");
  badge.className = `badge ${BAND_CLASS[band]}`;
  badge.style.backgroundColor = BAND_COLOUR[band];
  badge.dataset.band = band;
  badge.textContent =
    confidence !== undefined ? `${band} (${confidence.toFixed(2)})` : band;
  return badge;
}
