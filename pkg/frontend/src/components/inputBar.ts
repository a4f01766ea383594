// The language bar: a compact input where spoken words would land.
// Text stands in for speech; the adornment says so.

export function renderInputBar(onSubmit: (text: string) => void): HTMLElement {
  const bar = document.createElement("form");
  bar.className = "input-bar";

  const adornment = document.createElement("span");
  adornment.className = "transcript-label";
  adornment.textContent = "transcript";
  adornment.title = "Text stands in for speech input in this demo";

  const input = document.createElement("input");
  input.type = "text";
  input.className = "utterance-input";
  input.placeholder = "Type what you would say…";
  input.autocomplete = "off";

  const send = document.createElement("button");
  send.type = "submit";
  send.textContent = "Send";

  bar.append(adornment, input, send);
  bar.addEventListener("submit", (event) => {
    event.preventDefault();
    const text = input.value.trim();
    if (!text) return;
    input.value = "";
    onSubmit(text);
  });
  return bar;
}
