// UI state as a pure projection of backend events.
//
// The browser never mutates screen or history state on its own initiative:
// every change arrives through the event stream (or a resync snapshot), so
// replaying the same events always reproduces the same rendering.

import {
  BackendEvent,
  DEFAULT_HIGHLIGHT_STYLE,
  HighlightEvent,
  ScreenState,
  UiHistoryItem,
} from "./types.js";

export interface UiState {
  screen: ScreenState | null;
  history: UiHistoryItem[];
  /**
   * The history panel opens automatically for textual assistant responses
   * and stays collapsed for pure GUI responses, which already speak for
   * themselves on screen.
   */
  panelExpanded: boolean;
  /** Latest spoken-feedback text (displayed, as the speech stand-in). */
  speech: string;
  /** Highlights not yet applied to the DOM; drained by the view layer. */
  pendingHighlights: HighlightEvent[];
}

export function initialState(): UiState {
  return {
    screen: null,
    history: [],
    panelExpanded: false,
    speech: "",
    pendingHighlights: [],
  };
}

export function applyEvent(state: UiState, event: BackendEvent): UiState {
  switch (event.kind) {
    case "screen_change":
      return { ...state, screen: event.state };
    case "highlight":
      return {
        ...state,
        pendingHighlights: [
          ...state.pendingHighlights,
          {
            targets: event.targets,
            durationMs: event.duration_ms,
            style: DEFAULT_HIGHLIGHT_STYLE,
          },
        ],
      };
    case "speech":
      return { ...state, speech: event.text };
    case "history_append":
      return {
        ...state,
        history: [...state.history, event.item],
        panelExpanded: state.panelExpanded || event.item.kind === "assistant_text",
      };
    default:
      // heartbeats and unknown future events change nothing
      return state;
  }
}

export function projectEvents(events: BackendEvent[], from?: UiState): UiState {
  return events.reduce(applyEvent, from ?? initialState());
}

/** Rebuild state from GET /state + GET /history after a reload or stream drop. */
export function resyncState(screen: ScreenState, history: UiHistoryItem[]): UiState {
  return { ...initialState(), screen, history: [...history] };
}

export function takeHighlights(state: UiState): [HighlightEvent[], UiState] {
  if (state.pendingHighlights.length === 0) {
    return [[], state];
  }
  return [state.pendingHighlights, { ...state, pendingHighlights: [] }];
}
