// DOM rendering. Everything here is a projection of the last SessionState;
// no marking math happens client-side.

import { badges, boardGroups, formatCountdown, isClickable } from "./selectors.js";
import type { EventState, HistoryEntry, SessionState } from "./types.js";

export interface ViewCallbacks {
  onCard(event: EventState): void;
  onRole(role: string): void;
}

function el<K extends keyof HTMLElementTagNameMap>(
  tag: K,
  className?: string,
  text?: string,
): HTMLElementTagNameMap[K] {
  const node = document.createElement(tag);
  if (className) node.className = className;
  if (text !== undefined) node.textContent = text;
  return node;
}

export function renderBoard(
  container: HTMLElement,
  state: SessionState,
  role: string,
  rejections: Map<string, string>,
  callbacks: ViewCallbacks,
): void {
  container.textContent = "";
  for (const group of boardGroups(state)) {
    const section = el("section", "group");
    if (group.parent) {
      section.append(el("h3", "group-title", group.parent));
    }
    const grid = el("div", "grid");
    for (const event of group.events) {
      grid.append(renderCard(event, role, rejections.get(event.id), callbacks));
    }
    section.append(grid);
    container.append(section);
  }
}

function renderCard(
  event: EventState,
  role: string,
  rejection: string | undefined,
  callbacks: ViewCallbacks,
): HTMLElement {
  const clickable = isClickable(event, role);
  const card = el("button", "card");
  card.type = "button";
  if (!event.included) card.classList.add("excluded");
  if (!clickable) card.classList.add("disabled");
  if (event.deadline !== null) card.classList.add("pending");

  const header = el("div", "card-top");
  header.append(el("span", "card-roles", event.roles.join(", ") || "anyone"));
  const kindMark = event.kind === "input" ? "?" : event.kind === "compute" ? "=" : "";
  if (kindMark) header.append(el("span", "card-kind", kindMark));
  card.append(header);

  const title = el("div", "card-title");
  const marks = badges(event);
  if (marks.length) title.append(el("span", "card-badges", marks.join(" ")));
  title.append(el("span", undefined, event.action));
  card.append(title);

  const meta: string[] = [];
  if (event.deadline !== null) meta.push(formatCountdown(event.deadline));
  if (event.value !== null) meta.push(`= ${JSON.stringify(event.value)}`);
  if (meta.length) card.append(el("div", "card-meta", meta.join(" · ")));
  if (rejection) {
    card.append(el("div", "card-reject", rejection));
    card.title = rejection;
  }

  card.addEventListener("click", () => callbacks.onCard(event));
  return card;
}

export function renderRoles(
  select: HTMLSelectElement,
  options: string[],
  current: string,
  callbacks: ViewCallbacks,
): void {
  select.textContent = "";
  for (const role of options) {
    const option = el("option", undefined, role);
    option.value = role;
    select.append(option);
  }
  select.value = current;
  select.onchange = () => callbacks.onRole(select.value);
}

export function renderLog(container: HTMLElement, history: HistoryEntry[]): void {
  container.textContent = "";
  for (const entry of history) {
    const line =
      entry.type === "execute"
        ? `t=${entry.at}s  ${entry.role || "anyone"} executed ${entry.event}` +
          (entry.value !== undefined ? ` (${JSON.stringify(entry.value)})` : "") +
          (entry.report && entry.report.completedSubprocesses.length
            ? ` [completed ${entry.report.completedSubprocesses.join(", ")}]`
            : "")
        : `t=${entry.at}s  time advanced by ${entry.steps}s`;
    container.append(el("div", "log-line", line));
  }
  container.scrollTop = container.scrollHeight;
}

export function renderAccepting(badge: HTMLElement, accepting: boolean): void {
  badge.textContent = accepting ? "accepting" : "not accepting";
  badge.className = accepting ? "accepting yes" : "accepting no";
}

export function renderError(container: HTMLElement, message: string): void {
  container.textContent = message;
  container.style.display = message ? "block" : "none";
}
