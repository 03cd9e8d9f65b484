import { describe, expect, it } from "vitest";

import { traceJsonl } from "../src/trace.js";
import type { HistoryEntry } from "../src/types.js";

describe("trace download format", () => {
  it("emits one JSON object per executed action with 1-based seq", () => {
    const history: HistoryEntry[] = [
      { type: "execute", at: 0, event: "createGame", role: "operator",
        value: "abc123" },
      { type: "advance", at: 86401, steps: 86401 },
      { type: "execute", at: 86401, event: "timeoutBet", role: "player" },
    ];
    const text = traceJsonl(history);
    const lines = text.trimEnd().split("\n").map((l) => JSON.parse(l));
    expect(lines).toEqual([
      { seq: 1, at: 0, role: "operator", event: "createGame", value: "abc123" },
      { seq: 2, at: 86401, role: "player", event: "timeoutBet" },
    ]);
    expect(text.endsWith("\n")).toBe(true);
  });

  it("empty history gives an empty trace", () => {
    expect(traceJsonl([])).toBe("");
    expect(traceJsonl([{ type: "advance", at: 5, steps: 5 }])).toBe("");
  });

  it("keeps numeric and boolean values as JSON scalars", () => {
    const text = traceJsonl([
      { type: "execute", at: 1, event: "deposit", role: "user", value: 50 },
      { type: "execute", at: 2, event: "vote", role: "member", value: true },
    ]);
    const [a, b] = text.trimEnd().split("\n").map((l) => JSON.parse(l));
    expect(a.value).toBe(50);
    expect(b.value).toBe(true);
  });
});
