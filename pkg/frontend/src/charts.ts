/** Minimal dependency-free bar chart over a per-year count map. */

export function barChart(
  perYear: Record<string, number>,
  label: string,
): HTMLElement {
  const wrap = document.createElement("div");
  wrap.className = "chart";
  const title = document.createElement("div");
  title.className = "chart-title";
  title.textContent = label;
  wrap.appendChild(title);

  const years = Object.keys(perYear).sort();
  const max = Math.max(1, ...years.map((y) => perYear[y]));
  const bars = document.createElement("div");
  bars.className = "chart-bars";
  for (const year of years) {
    const column = document.createElement("div");
    column.className = "chart-column";
    const bar = document.createElement("div");
    bar.className = "chart-bar";
    bar.style.height = `${(perYear[year] / max) * 100}%`;
    bar.dataset.year = year;
    bar.dataset.value = String(perYear[year]);
    bar.title = `${year}: ${perYear[year]}`;
    const tick = document.createElement("div");
    tick.className = "chart-tick";
    tick.textContent = year.slice(2);
    column.append(bar, tick);
    bars.appendChild(column);
  }
  if (years.length === 0) {
    const empty = document.createElement("div");
    empty.className = "chart-empty";
    empty.textContent = "no data";
    bars.appendChild(empty);
  }
  wrap.appendChild(bars);
  return wrap;
}
