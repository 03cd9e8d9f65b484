// Pure projections over the last server state. Rendering and tests share
// these so a card's clickability is exactly the server's enabled answer.

import type { EventState, SessionState } from "./types.js";

export const ANYONE = "(anyone)";

export function roleOptions(state: SessionState): string[] {
  return [ANYONE, ...state.roles];
}

export function isClickable(event: EventState, role: string): boolean {
  if (role === ANYONE) return event.enabledAnyRole;
  return event.enabledRoles.includes(role);
}

export function clickableIds(state: SessionState, role: string): string[] {
  return state.events.filter((e) => isClickable(e, role)).map((e) => e.id);
}

/** Top-level ancestor used for board grouping ("" for plain root events).
 * A sub-process event with no parent leads its own group. */
export function groupOf(state: SessionState, eventId: string): string {
  const byId = new Map(state.events.map((e) => [e.id, e]));
  const parents = new Set(
    state.events.map((e) => e.parent).filter((p): p is string => p !== null),
  );
  let current = byId.get(eventId);
  let group = "";
  while (current && current.parent) {
    group = current.parent;
    current = byId.get(current.parent);
  }
  if (!group && parents.has(eventId)) return eventId;
  return group;
}

export interface BoardGroup {
  parent: string; // "" for the root group
  events: EventState[];
}

/** Group events for the board: root events first, one group per sub-process
 * (the sub-process event itself leads its group). */
export function boardGroups(state: SessionState): BoardGroup[] {
  const groups = new Map<string, EventState[]>();
  for (const event of state.events) {
    const key = groupOf(state, event.id);
    if (!groups.has(key)) groups.set(key, []);
    groups.get(key)!.push(event);
  }
  const ordered: BoardGroup[] = [];
  if (groups.has("")) ordered.push({ parent: "", events: groups.get("")! });
  for (const [parent, events] of groups) {
    if (parent !== "") ordered.push({ parent, events });
  }
  return ordered;
}

export function badges(event: EventState): string[] {
  const out: string[] = [];
  if (event.executedAge !== null) out.push("✓");
  if (event.deadline !== null) out.push("!");
  return out;
}

/** Seconds -> compact human text for deadline countdowns. */
export function formatCountdown(deadline: number | "inf" | null): string {
  if (deadline === null) return "";
  if (deadline === "inf") return "eventually";
  if (deadline === 0) return "now";
  const units: [number, string][] = [
    [86400, "d"],
    [3600, "h"],
    [60, "m"],
    [1, "s"],
  ];
  const parts: string[] = [];
  let rest = deadline;
  for (const [size, label] of units) {
    const n = Math.floor(rest / size);
    if (n > 0) {
      parts.push(`${n}${label}`);
      rest -= n * size;
    }
    if (parts.length === 2) break;
  }
  return `within ${parts.join(" ")}`;
}

/** Very light ISO-duration sanity check so typos fail before the request. */
export function looksLikeDuration(text: string): boolean {
  return /^P(\d+Y)?(\d+M)?(\d+W)?(\d+D)?(T(\d+H)?(\d+M)?(\d+S)?)?$/.test(text)
    && /\d/.test(text) && !text.endsWith("T");
}
