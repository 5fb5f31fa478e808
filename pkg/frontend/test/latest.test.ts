import { describe, expect, it } from "vitest";

import { LatestGate } from "../src/latest.js";

describe("LatestGate", () => {
  it("accepts the only outstanding ticket", () => {
    const gate = new LatestGate();
    const t = gate.issue();
    expect(gate.isCurrent(t)).toBe(true);
  });

  it("rejects a ticket once a newer one is issued", () => {
    const gate = new LatestGate();
    const stale = gate.issue();
    const fresh = gate.issue();
    expect(gate.isCurrent(stale)).toBe(false);
    expect(gate.isCurrent(fresh)).toBe(true);
  });

  it("keeps rejecting stale tickets after they are checked", () => {
    const gate = new LatestGate();
    const first = gate.issue();
    gate.issue();
    const third = gate.issue();
    expect(gate.isCurrent(first)).toBe(false);
    expect(gate.isCurrent(third)).toBe(true);
    expect(gate.isCurrent(first)).toBe(false);
  });
});
