// Grounding highlights: emphasize the GUI elements the assistant "tapped".
//
// Elements declare their identity via data-ui-id ("nav:map", "field:amount",
// "option:offices"). Ids that are not rendered right now are dropped with a
// console note; a stale or unknown target must never break rendering.

import { HighlightEvent } from "./types.js";

export const HIGHLIGHT_CLASS = "highlighted";

export function applyHighlights(
  root: ParentNode,
  event: HighlightEvent,
  schedule: (fn: () => void, ms: number) => void = (fn, ms) => setTimeout(fn, ms),
): string[] {
  const applied: string[] = [];
  for (const target of event.targets) {
    const element = root.querySelector<HTMLElement>(`[data-ui-id="${cssEscape(target)}"]`);
    if (!element) {
      console.info(`highlight target not rendered: ${target}`);
      continue;
    }
    element.classList.add(HIGHLIGHT_CLASS);
    element.style.setProperty("--highlight-color", event.style.color);
    if (event.style.enlarge) element.classList.add("highlighted-enlarge");
    if (event.style.animate) element.classList.add("highlighted-animate");
    schedule(() => {
      element.classList.remove(HIGHLIGHT_CLASS, "highlighted-enlarge", "highlighted-animate");
    }, event.durationMs);
    applied.push(target);
  }
  return applied;
}

function cssEscape(value: string): string {
  return value.replace(/["\\]/g, "\\$&");
}
