/** Unit formatting only; no numeric model logic lives in the UI. */

const DAYS_PER_MONTH = 30.44;

export function days(value: number): string {
  return `${Math.round(value)} days`;
}

export function approxMonths(value: number): string {
  return `~${Math.round(value / DAYS_PER_MONTH)} months`;
}

export function interval(low: number, high: number): string {
  return `${Math.round(low)}–${Math.round(high)} days`;
}

export function dateOrPending(iso?: string): string {
  return iso ?? "pending";
}
