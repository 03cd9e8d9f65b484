// Turn a session's server-side history into a JSON-lines trace that the
// conformance monitor and `dcr replay` accept unchanged.

import type { HistoryEntry } from "./types.js";

export function traceJsonl(history: HistoryEntry[]): string {
  const lines: string[] = [];
  let seq = 0;
  for (const entry of history) {
    if (entry.type !== "execute" || !entry.event) continue;
    seq += 1;
    const row: Record<string, unknown> = {
      seq,
      at: entry.at,
      role: entry.role ?? "",
      event: entry.event,
    };
    if (entry.value !== undefined && entry.value !== null) {
      row.value = entry.value;
    }
    lines.push(JSON.stringify(row));
  }
  return lines.length ? lines.join("\n") + "\n" : "";
}
