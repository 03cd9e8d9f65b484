// App wiring: load a model, keep one session per tab, render on every
// server response or push-stream message.

import { ServiceError, SimClient } from "./api.js";
import { BUNDLED_MODELS } from "./models.gen.js";
import { ANYONE, looksLikeDuration, roleOptions } from "./selectors.js";
import { openStream, type StreamHandle } from "./stream.js";
import { traceJsonl } from "./trace.js";
import type { EventState, SessionState } from "./types.js";
import {
  renderAccepting,
  renderBoard,
  renderError,
  renderLog,
  renderRoles,
} from "./view.js";

const client = new SimClient("..");

let sessionId: string | null = null;
let lastState: SessionState | null = null;
let currentRole = ANYONE;
let stream: StreamHandle | null = null;
const rejections = new Map<string, string>();

const $ = <T extends HTMLElement>(id: string): T =>
  document.getElementById(id) as T;

function render(): void {
  const state = lastState;
  if (!state) return;
  $("model-name").textContent = state.name;
  $("clock").textContent = `t = ${state.time}s`;
  renderRoles($("role-select") as HTMLSelectElement, roleOptions(state),
    currentRole, callbacks);
  renderBoard($("board"), state, currentRole, rejections, callbacks);
  renderLog($("log"), state.history);
  renderAccepting($("accepting"), state.accepting);
  ($("dot-link") as HTMLAnchorElement).href = client.dotUrl(sessionId ?? "");
  $("session-panel").style.display = "block";
}

function setState(state: SessionState): void {
  lastState = state;
  render();
}

function describe(error: unknown): string {
  if (error instanceof ServiceError) {
    const body = error.body;
    let text = body.error;
    if (body.clause) text += ` (${body.clause})`;
    if (body.detail) text += `: ${body.detail}`;
    if (body.line !== undefined) text += ` at line ${body.line}:${body.column}`;
    if (body.events) {
      text += ` — ${body.events.map((e) => `${e.event} (deadline ${e.deadline}s)`).join(", ")}`;
    }
    if (body.findings) text += ` — ${body.findings.join("; ")}`;
    return text;
  }
  return String(error);
}

const callbacks = {
  async onCard(event: EventState): Promise<void> {
    if (!sessionId) return;
    let value: string | undefined;
    if (event.kind === "input") {
      const entered = window.prompt(`value for ${event.action}`, "");
      if (entered === null) return;
      value = entered;
    }
    try {
      const result = await client.execute(
        sessionId, event.id, currentRole === ANYONE ? ANYONE : currentRole,
        value,
      );
      rejections.delete(event.id);
      renderError($("error"), "");
      setState(result.state);
    } catch (error) {
      rejections.set(event.id, describe(error));
      renderError($("error"), describe(error));
      render();
    }
  },
  onRole(role: string): void {
    currentRole = role;
    render();
  },
};

async function loadModel(dsl: string): Promise<void> {
  try {
    renderError($("error"), "");
    const sid = await client.createSession(dsl);
    sessionId = sid;
    rejections.clear();
    currentRole = ANYONE;
    stream?.stop();
    stream = openStream(client.streamUrl(sid), (message) => {
      if (message.state) setState(message.state);
    });
    setState(await client.state(sid));
  } catch (error) {
    renderError($("error"), describe(error));
  }
}

function wireUp(): void {
  const picker = $("model-picker") as HTMLSelectElement;
  for (const name of Object.keys(BUNDLED_MODELS)) {
    const option = document.createElement("option");
    option.value = name;
    option.textContent = name;
    picker.append(option);
  }
  picker.onchange = () => {
    if (picker.value) {
      ($("dsl-input") as HTMLTextAreaElement).value = BUNDLED_MODELS[picker.value];
    }
  };

  $("load-button").onclick = () => {
    const text = ($("dsl-input") as HTMLTextAreaElement).value;
    if (text.trim()) void loadModel(text);
  };

  $("advance-button").onclick = async () => {
    if (!sessionId) return;
    const duration = ($("duration-input") as HTMLInputElement).value.trim();
    if (!looksLikeDuration(duration)) {
      renderError($("error"), `not an ISO-8601 duration: ${duration}`);
      return;
    }
    try {
      renderError($("error"), "");
      rejections.clear();
      setState(await client.advance(sessionId, duration));
    } catch (error) {
      renderError($("error"), describe(error));
    }
  };
  for (const preset of ["PT1M", "PT1H", "P1D"]) {
    const button = document.createElement("button");
    button.textContent = `+${preset}`;
    button.onclick = () => {
      ($("duration-input") as HTMLInputElement).value = preset;
      $("advance-button").click();
    };
    $("presets").append(button);
  }

  $("reset-button").onclick = async () => {
    if (!sessionId) return;
    rejections.clear();
    setState(await client.reset(sessionId));
  };

  $("download-button").onclick = () => {
    if (!lastState) return;
    const text = traceJsonl(lastState.history);
    const blob = new Blob([text], { type: "application/x-ndjson" });
    const anchor = document.createElement("a");
    anchor.href = URL.createObjectURL(blob);
    anchor.download = `${lastState.name}-trace.jsonl`;
    anchor.click();
    URL.revokeObjectURL(anchor.href);
  };
}

wireUp();
