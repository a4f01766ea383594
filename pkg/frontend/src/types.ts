// Wire shapes of the demo backend (HTTP + server-sent events).

export type HistoryKind = "user" | "assistant_text" | "gui_action";

export interface UiHistoryItem {
  display: string;
  kind: HistoryKind;
  /** Canonical deep link; present on every gui_action item. */
  replay?: string;
}

export interface ScreenState {
  screen_id: string;
  label: string;
  parameter_values: Record<string, unknown>;
  provenance: Record<string, string>;
  screen_text: string;
}

export interface HighlightStyle {
  color: string;
  enlarge: boolean;
  animate: boolean;
}

export interface HighlightEvent {
  /** Element ids in the nav:/field:/option: namespace. */
  targets: string[];
  durationMs: number;
  style: HighlightStyle;
}

/** Green emphasis is the default grounding style. */
export const DEFAULT_HIGHLIGHT_STYLE: HighlightStyle = {
  color: "#2e7d32",
  enlarge: true,
  animate: true,
};

export type BackendEvent =
  | { kind: "screen_change"; state: ScreenState; source: string }
  | { kind: "highlight"; targets: string[]; duration_ms: number }
  | { kind: "speech"; text: string }
  | { kind: "history_append"; item: UiHistoryItem };

export interface TurnDoc {
  utterance: string;
  fastpath: boolean;
  model_calls: number;
  assistant_text: string | null;
  tool_call: { name: string; arguments: Record<string, unknown> } | null;
  result_text: string | null;
  feedback: {
    speech_text: string;
    highlight_targets: string[];
    history_entry: string | null;
  } | null;
  error: string | null;
}
