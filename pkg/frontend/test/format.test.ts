import { describe, expect, it } from "vitest";

import { approxMonths, dateOrPending, days, interval } from "../src/format.js";
import { parseRoute } from "../src/app.js";

describe("unit formatting", () => {
  it("rounds day values", () => {
    expect(days(1202.4)).toBe("1202 days");
    expect(days(0)).toBe("0 days");
  });

  it("converts days to approximate months", () => {
    expect(approxMonths(1095.4)).toBe("~36 months");
    expect(approxMonths(30.44)).toBe("~1 months");
  });

  it("formats intervals and pending dates", () => {
    expect(interval(800.2, 1390.6)).toBe("800–1391 days");
    expect(dateOrPending("2018-06-15")).toBe("2018-06-15");
    expect(dateOrPending(undefined)).toBe("pending");
  });
});

describe("hash routing", () => {
  it("parses the three page routes", () => {
    expect(parseRoute("#/inventor/mai-nguyen")).toEqual({ page: "inventor", id: "mai-nguyen" });
    expect(parseRoute("#/orgs/ibm,google")).toEqual({ page: "orgs", ids: ["ibm", "google"] });
    expect(parseRoute("#/whatif")).toEqual({ page: "whatif" });
    expect(parseRoute("")).toEqual({ page: "whatif" });
  });
});
