import { describe, expect, it } from "vitest";

import {
  ANYONE,
  badges,
  boardGroups,
  clickableIds,
  formatCountdown,
  groupOf,
  isClickable,
  looksLikeDuration,
  roleOptions,
} from "../src/selectors.js";
import type { EventState, SessionState } from "../src/types.js";

function ev(partial: Partial<EventState> & { id: string }): EventState {
  return {
    action: partial.id,
    roles: [],
    kind: "simple",
    parent: null,
    included: true,
    executedAge: null,
    deadline: null,
    value: null,
    enabledRoles: [],
    enabledAnyRole: false,
    ...partial,
  };
}

function state(events: EventState[], roles: string[] = []): SessionState {
  return {
    sessionId: "s", name: "g", roles, time: 0, accepting: true,
    events, history: [],
  };
}

describe("clickability", () => {
  it("mirrors the server's enabled answer exactly", () => {
    const commit = ev({ id: "commit", enabledAnyRole: true, enabledRoles: ["user"] });
    const reveal = ev({ id: "reveal" });
    const s = state([commit, reveal], ["user"]);
    expect(isClickable(commit, ANYONE)).toBe(true);
    expect(isClickable(commit, "user")).toBe(true);
    expect(isClickable(reveal, ANYONE)).toBe(false);
    expect(clickableIds(s, "user")).toEqual(["commit"]);
  });

  it("role-restricted events are only clickable for their roles", () => {
    const destroy = ev({ id: "destroy", roles: ["admin"], enabledRoles: ["admin"] });
    expect(isClickable(destroy, "admin")).toBe(true);
    expect(isClickable(destroy, "user")).toBe(false);
    expect(isClickable(destroy, ANYONE)).toBe(false);
  });
});

describe("board grouping", () => {
  it("groups by top-level sub-process with roots first", () => {
    const s = state([
      ev({ id: "free" }),
      ev({ id: "outer" }),
      ev({ id: "mid", parent: "outer" }),
      ev({ id: "leaf", parent: "mid" }),
    ]);
    expect(groupOf(s, "free")).toBe("");
    expect(groupOf(s, "leaf")).toBe("outer");
    const groups = boardGroups(s);
    expect(groups.map((g) => g.parent)).toEqual(["", "outer"]);
    expect(groups[0].events.map((e) => e.id)).toEqual(["free"]);
    expect(groups[1].events.map((e) => e.id)).toEqual(["outer", "mid", "leaf"]);
  });
});

describe("badges and countdowns", () => {
  it("marks executed and pending", () => {
    expect(badges(ev({ id: "a", executedAge: 0, deadline: "inf" }))).toEqual(["✓", "!"]);
    expect(badges(ev({ id: "a" }))).toEqual([]);
  });

  it("formats deadlines at two units", () => {
    expect(formatCountdown(null)).toBe("");
    expect(formatCountdown("inf")).toBe("eventually");
    expect(formatCountdown(0)).toBe("now");
    expect(formatCountdown(90061)).toBe("within 1d 1h");
    expect(formatCountdown(61)).toBe("within 1m 1s");
    expect(formatCountdown(86400)).toBe("within 1d");
  });
});

describe("misc", () => {
  it("role options start with the open role", () => {
    expect(roleOptions(state([], ["operator", "player"])))
      .toEqual([ANYONE, "operator", "player"]);
  });

  it("duration sanity check", () => {
    expect(looksLikeDuration("P1D")).toBe(true);
    expect(looksLikeDuration("PT1H30M")).toBe(true);
    expect(looksLikeDuration("nope")).toBe(false);
    expect(looksLikeDuration("P")).toBe(false);
    expect(looksLikeDuration("P1DT")).toBe(false);
  });
});
