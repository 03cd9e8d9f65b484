// Wire types mirroring the simulation service's JSON responses.

export type Value = number | boolean | string;

export interface EventState {
  id: string;
  action: string;
  roles: string[];
  kind: "simple" | "input" | "compute";
  parent: string | null;
  included: boolean;
  executedAge: number | null;
  deadline: number | "inf" | null;
  value: Value | null;
  enabledRoles: string[];
  enabledAnyRole: boolean;
}

export interface HistoryEntry {
  type: "execute" | "advance";
  at: number;
  event?: string;
  role?: string;
  value?: Value;
  steps?: number;
  report?: EffectReport;
}

export interface EffectReport {
  executedEvent: string;
  newValue: Value | null;
  included: string[];
  excluded: string[];
  responsesSet: Record<string, number | "inf">;
  cancelled: string[];
  valuesCopied: Record<string, Value | null>;
  completedSubprocesses: string[];
}

export interface SessionState {
  sessionId: string;
  name: string;
  roles: string[];
  time: number;
  accepting: boolean;
  events: EventState[];
  history: HistoryEntry[];
}

export interface ApiError {
  error: string;
  clause?: string;
  detail?: string;
  line?: number;
  column?: number;
  events?: { event: string; deadline: number }[];
  findings?: string[];
}

export interface StreamMessage {
  type: "hello" | "heartbeat" | "execute" | "advance" | "reset";
  seq?: number;
  state?: SessionState;
}
