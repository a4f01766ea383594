// Demo screens: a navigation rail plus the active screen's fields.
// Every interactive element carries its data-ui-id so highlights resolve.

import { ScreenState } from "../types.js";

interface NavEntry {
  route: string;
  label: string;
  options?: { name: string; route: string; label: string }[];
}

// mirrors the demo backend's route graph
export const NAV: NavEntry[] = [
  { route: "accounts", label: "Accounts" },
  { route: "transfer", label: "Transfer" },
  { route: "creditcard", label: "Credit Card" },
  {
    route: "map",
    label: "Map",
    options: [
      { name: "offices", route: "offices-map", label: "Offices" },
      { name: "atms", route: "atms-map", label: "Cash machines" },
    ],
  },
  { route: "record_incident", label: "Incidents" },
];

export function deeplinkFor(route: string): string {
  for (const entry of NAV) {
    for (const option of entry.options ?? []) {
      if (option.route === route) return `app://${entry.route}/${route}`;
    }
  }
  return `app://${route}`;
}

export function renderNav(activeScreen: string | null, onNavigate: (link: string) => void): HTMLElement {
  const nav = document.createElement("nav");
  nav.className = "nav-rail";
  for (const entry of NAV) {
    const button = document.createElement("button");
    button.type = "button";
    button.className = "nav-button";
    button.dataset.uiId = `nav:${entry.route}`;
    button.dataset.active = String(activeScreen === entry.route);
    button.textContent = entry.label;
    button.addEventListener("click", () => onNavigate(`app://${entry.route}`));
    nav.appendChild(button);
    for (const option of entry.options ?? []) {
      const optionButton = document.createElement("button");
      optionButton.type = "button";
      optionButton.className = "nav-option";
      optionButton.dataset.uiId = `option:${option.name}`;
      optionButton.dataset.active = String(activeScreen === option.route);
      optionButton.textContent = option.label;
      optionButton.addEventListener("click", () => onNavigate(deeplinkFor(option.route)));
      nav.appendChild(optionButton);
    }
  }
  return nav;
}

export function renderScreen(screen: ScreenState | null): HTMLElement {
  const main = document.createElement("main");
  main.className = "screen";
  if (!screen) {
    main.textContent = "Connecting…";
    return main;
  }
  const title = document.createElement("h1");
  title.textContent = screen.label;
  main.appendChild(title);

  const entries = Object.entries(screen.parameter_values);
  if (entries.length === 0) {
    const empty = document.createElement("p");
    empty.className = "muted";
    empty.textContent = "No fields filled.";
    main.appendChild(empty);
  } else {
    const fields = document.createElement("dl");
    fields.className = "fields";
    for (const [name, value] of entries) {
      const row = document.createElement("div");
      row.className = "field-row";
      row.dataset.uiId = `field:${name}`;
      const dt = document.createElement("dt");
      dt.textContent = name;
      const dd = document.createElement("dd");
      dd.textContent = renderValue(value);
      row.append(dt, dd);
      fields.appendChild(row);
    }
    main.appendChild(fields);
  }
  return main;
}

function renderValue(value: unknown): string {
  if (typeof value === "boolean") return value ? "true" : "false";
  if (typeof value === "number" && Number.isInteger(value)) return String(value);
  return String(value);
}
