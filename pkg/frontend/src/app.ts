import { ApiClient } from "./api.js";
import { InventorPage } from "./pages/inventor.js";
import { OrgComparePage } from "./pages/orgs.js";
import { WhatIfPage } from "./pages/whatif.js";

declare global {
  interface Window {
    PATLYTICS_API_BASE?: string;
  }
}

type Route =
  | { page: "inventor"; id: string }
  | { page: "orgs"; ids: string[] }
  | { page: "whatif" };

export function parseRoute(hash: string): Route {
  const parts = hash.replace(/^#\/?/, "").split("/");
  if (parts[0] === "inventor" && parts[1]) {
    return { page: "inventor", id: decodeURIComponent(parts[1]) };
  }
  if (parts[0] === "orgs" && parts[1]) {
    return { page: "orgs", ids: parts[1].split(",").map(decodeURIComponent).filter(Boolean) };
  }
  return { page: "whatif" };
}

export function startApp(root: HTMLElement): void {
  const base = window.PATLYTICS_API_BASE ?? "";
  const api = new ApiClient(base);

  const nav = document.createElement("nav");
  nav.innerHTML =
    '<a href="#/whatif">What-if</a> ' +
    '<a href="#/inventor/mai-nguyen">Inventor</a> ' +
    '<a href="#/orgs/ibm,google">Compare organisations</a>';
  const outlet = document.createElement("main");
  root.replaceChildren(nav, outlet);

  const render = () => {
    const route = parseRoute(window.location.hash);
    const host = document.createElement("div");
    outlet.replaceChildren(host);
    if (route.page === "inventor") {
      void new InventorPage(host, api).show(route.id);
    } else if (route.page === "orgs") {
      void new OrgComparePage(host, api).show(route.ids);
    } else {
      new WhatIfPage(host, api);
    }
  };

  window.addEventListener("hashchange", render);
  render();
}

if (typeof document !== "undefined" && document.getElementById("app") !== null) {
  startApp(document.getElementById("app") as HTMLElement);
}
