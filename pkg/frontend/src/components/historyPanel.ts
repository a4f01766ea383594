// Expandable history panel: chat turns and GUI actions in one trace.
// GUI actions render as clickable links that replay their deep link.

import { UiHistoryItem } from "../types.js";

export interface HistoryHandlers {
  onReplay: (link: string, index: number) => void;
  onToggle: () => void;
}

export function renderHistoryPanel(
  items: UiHistoryItem[],
  expanded: boolean,
  replayErrors: Record<number, string>,
  handlers: HistoryHandlers,
): HTMLElement {
  const panel = document.createElement("section");
  panel.className = "history-panel";
  panel.dataset.expanded = String(expanded);

  const header = document.createElement("button");
  header.className = "history-toggle";
  header.type = "button";
  header.textContent = expanded ? `History (${items.length}) ▾` : `History (${items.length}) ▸`;
  header.addEventListener("click", handlers.onToggle);
  panel.appendChild(header);

  if (!expanded) {
    return panel;
  }

  const list = document.createElement("ul");
  list.className = "history-list";
  items.forEach((item, index) => {
    const row = document.createElement("li");
    row.className = `history-item history-${item.kind}`;
    if (item.kind === "gui_action" && item.replay) {
      const link = document.createElement("button");
      link.type = "button";
      link.className = "replay-link";
      link.textContent = item.display;
      link.title = item.replay;
      link.addEventListener("click", () => handlers.onReplay(item.replay as string, index));
      row.appendChild(link);
    } else {
      const text = document.createElement("span");
      text.textContent = item.display;
      row.appendChild(text);
    }
    const error = replayErrors[index];
    if (error) {
      const badge = document.createElement("span");
      badge.className = "replay-error";
      badge.textContent = error;
      row.appendChild(badge);
    }
    list.appendChild(row);
  });
  panel.appendChild(list);
  return panel;
}
