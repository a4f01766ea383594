// Boot: resync from the backend, subscribe to events, render on change.
//
// All user actions go through one FIFO queue; the DOM is re-rendered from
// the projected state after every event, and pending highlights are applied
// to the fresh DOM afterwards.

import { BackendClient, BackendError } from "./api.js";
import { applyHighlights } from "./highlight.js";
import { renderHistoryPanel } from "./components/historyPanel.js";
import { renderInputBar } from "./components/inputBar.js";
import { renderNav, renderScreen } from "./components/screens.js";
import { ActionQueue } from "./queue.js";
import { subscribeEvents } from "./sse.js";
import { applyEvent, initialState, resyncState, takeHighlights, UiState } from "./state.js";

const client = new BackendClient("");
const queue = new ActionQueue();

let state: UiState = initialState();
let manuallyCollapsed = false;
const replayErrors: Record<number, string> = {};

function setState(next: UiState): void {
  state = next;
  render();
}

function render(): void {
  const root = document.getElementById("app");
  if (!root) return;
  root.replaceChildren();

  root.appendChild(renderNav(state.screen?.screen_id ?? null, navigate));
  root.appendChild(renderScreen(state.screen));

  const speech = document.createElement("p");
  speech.className = "speech-line";
  speech.textContent = state.speech;
  root.appendChild(speech);

  root.appendChild(
    renderHistoryPanel(state.history, state.panelExpanded && !manuallyCollapsed, replayErrors, {
      onReplay: replay,
      onToggle: () => {
        if (state.panelExpanded && !manuallyCollapsed) {
          manuallyCollapsed = true;
        } else {
          manuallyCollapsed = false;
          state = { ...state, panelExpanded: true };
        }
        render();
      },
    }),
  );
  root.appendChild(renderInputBar(submitUtterance));

  const [highlights, next] = takeHighlights(state);
  state = next;
  for (const highlight of highlights) {
    applyHighlights(root, highlight);
  }
}

function submitUtterance(text: string): void {
  void queue.enqueue(async () => {
    try {
      await client.utterance(text);
    } catch (error) {
      console.info("utterance rejected", error);
    }
  });
}

function navigate(link: string): void {
  void queue.enqueue(async () => {
    try {
      await client.deeplink(link);
    } catch (error) {
      console.info("navigation rejected", error);
    }
  });
}

function replay(link: string, index: number): void {
  void queue.enqueue(async () => {
    try {
      delete replayErrors[index];
      await client.deeplink(link);
    } catch (error) {
      replayErrors[index] = error instanceof BackendError ? error.reason : "replay failed";
      render();
    }
  });
}

async function resync(): Promise<void> {
  const [screen, history] = await Promise.all([client.state(), client.history()]);
  setState({ ...resyncState(screen, history), panelExpanded: state.panelExpanded });
}

async function boot(): Promise<void> {
  await resync();
  subscribeEvents("/events", {
    onEvent: (event) => setState(applyEvent(state, event)),
    onResync: resync,
  });
}

void boot();
