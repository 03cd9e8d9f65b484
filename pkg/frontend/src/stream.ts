// Line-delimited JSON reader for the state-change push stream.

import type { StreamMessage } from "./types.js";

export interface StreamHandle {
  stop(): void;
}

export function parseStreamChunk(
  buffer: string,
  chunk: string,
  onMessage: (message: StreamMessage) => void,
): string {
  let data = buffer + chunk;
  for (;;) {
    const nl = data.indexOf("\n");
    if (nl < 0) break;
    const line = data.slice(0, nl).trim();
    data = data.slice(nl + 1);
    if (!line) continue;
    try {
      onMessage(JSON.parse(line) as StreamMessage);
    } catch {
      // tolerate partial garbage; the next refresh resynchronizes
    }
  }
  return data;
}

export function openStream(
  url: string,
  onMessage: (message: StreamMessage) => void,
  onDrop?: () => void,
): StreamHandle {
  const controller = new AbortController();
  (async () => {
    try {
      const response = await fetch(url, { signal: controller.signal });
      if (!response.ok || !response.body) throw new Error(`HTTP ${response.status}`);
      const reader = response.body.getReader();
      const decoder = new TextDecoder();
      let buffer = "";
      for (;;) {
        const { done, value } = await reader.read();
        if (done) break;
        buffer = parseStreamChunk(buffer, decoder.decode(value, { stream: true }), onMessage);
      }
    } catch {
      // aborted or dropped
    }
    if (!controller.signal.aborted && onDrop) onDrop();
  })();
  return { stop: () => controller.abort() };
}
