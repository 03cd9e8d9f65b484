// Thin typed client for the simulation service. The UI never computes
// semantics on its own; every answer comes from these endpoints.

import type { ApiError, SessionState, EffectReport, Value } from "./types.js";

export class ServiceError extends Error {
  constructor(public status: number, public body: ApiError) {
    super(`${body.error}${body.detail ? `: ${body.detail}` : ""}`);
  }
}

async function parseError(response: Response): Promise<never> {
  let body: ApiError;
  try {
    body = (await response.json()) as ApiError;
  } catch {
    body = { error: `HTTP ${response.status}` };
  }
  throw new ServiceError(response.status, body);
}

export class SimClient {
  constructor(private base: string = "") {}

  private url(path: string): string {
    return this.base + path;
  }

  async createSession(dsl: string): Promise<string> {
    const response = await fetch(this.url("/graphs"), {
      method: "POST",
      headers: { "content-type": "text/plain; charset=utf-8" },
      body: dsl,
    });
    if (!response.ok) await parseError(response);
    const body = (await response.json()) as { sessionId: string };
    return body.sessionId;
  }

  async state(sessionId: string): Promise<SessionState> {
    const response = await fetch(this.url(`/sessions/${sessionId}`));
    if (!response.ok) await parseError(response);
    return (await response.json()) as SessionState;
  }

  async enabled(sessionId: string, role: string): Promise<string[]> {
    const response = await fetch(
      this.url(`/sessions/${sessionId}/enabled?role=${encodeURIComponent(role)}`),
    );
    if (!response.ok) await parseError(response);
    return (await response.json()) as string[];
  }

  async execute(
    sessionId: string,
    event: string,
    role: string,
    value?: Value,
  ): Promise<{ report: EffectReport; state: SessionState }> {
    const body: Record<string, unknown> = { event, role };
    if (value !== undefined) body.value = value;
    const response = await fetch(this.url(`/sessions/${sessionId}/execute`), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify(body),
    });
    if (!response.ok) await parseError(response);
    return (await response.json()) as { report: EffectReport; state: SessionState };
  }

  async advance(sessionId: string, duration: string): Promise<SessionState> {
    const response = await fetch(this.url(`/sessions/${sessionId}/advance`), {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ duration }),
    });
    if (!response.ok) await parseError(response);
    return ((await response.json()) as { state: SessionState }).state;
  }

  async reset(sessionId: string): Promise<SessionState> {
    const response = await fetch(this.url(`/sessions/${sessionId}/reset`), {
      method: "POST",
    });
    if (!response.ok) await parseError(response);
    return ((await response.json()) as { state: SessionState }).state;
  }

  async accepting(sessionId: string): Promise<boolean> {
    const response = await fetch(this.url(`/sessions/${sessionId}/accepting`));
    if (!response.ok) await parseError(response);
    return ((await response.json()) as { accepting: boolean }).accepting;
  }

  dotUrl(sessionId: string): string {
    return this.url(`/sessions/${sessionId}/export.dot`);
  }

  streamUrl(sessionId: string): string {
    return this.url(`/sessions/${sessionId}/events/stream`);
  }
}
