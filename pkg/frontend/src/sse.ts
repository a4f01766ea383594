// Server-sent events over fetch streaming.
//
// fetch + ReadableStream works both in browsers and in Node, unlike the
// EventSource global, and lets the reconnect path resync state from
// GET /state before resuming, so a dropped stream never leaves the UI stale.

import { BackendEvent } from "./types.js";

export class SseParser {
  private buffer = "";
  private dataLines: string[] = [];

  /** Feed a text chunk; returns any events completed by it. */
  push(chunk: string): BackendEvent[] {
    this.buffer += chunk;
    const events: BackendEvent[] = [];
    let newlineAt: number;
    while ((newlineAt = this.buffer.indexOf("\n")) >= 0) {
      const line = this.buffer.slice(0, newlineAt).replace(/\r$/, "");
      this.buffer = this.buffer.slice(newlineAt + 1);
      if (line === "") {
        if (this.dataLines.length > 0) {
          const payload = this.dataLines.join("\n");
          this.dataLines = [];
          try {
            events.push(JSON.parse(payload) as BackendEvent);
          } catch {
            console.info("dropping unparseable event payload", payload);
          }
        }
        continue;
      }
      if (line.startsWith(":")) {
        continue; // comment / heartbeat
      }
      if (line.startsWith("data:")) {
        this.dataLines.push(line.slice(5).trimStart());
      }
      // other SSE fields (event:, id:, retry:) are not used by the backend
    }
    return events;
  }
}

export interface SubscribeOptions {
  onEvent: (event: BackendEvent) => void;
  /** Called before each (re)connect except the first; resync state here. */
  onResync?: () => void | Promise<void>;
  retryMs?: number;
  fetchImpl?: typeof fetch;
}

export interface Subscription {
  stop(): void;
  done: Promise<void>;
}

export function subscribeEvents(url: string, options: SubscribeOptions): Subscription {
  const fetchImpl = options.fetchImpl ?? fetch;
  const retryMs = options.retryMs ?? 1000;
  const controller = new AbortController();
  let stopped = false;

  const done = (async () => {
    let first = true;
    while (!stopped) {
      if (!first && options.onResync) {
        await options.onResync();
      }
      first = false;
      try {
        const response = await fetchImpl(url, {
          headers: { accept: "text/event-stream" },
          signal: controller.signal,
        });
        if (!response.ok || !response.body) {
          throw new Error(`event stream unavailable: ${response.status}`);
        }
        const parser = new SseParser();
        const reader = response.body.getReader();
        const decoder = new TextDecoder();
        for (;;) {
          const { done: finished, value } = await reader.read();
          if (finished) break;
          for (const event of parser.push(decoder.decode(value, { stream: true }))) {
            options.onEvent(event);
          }
        }
      } catch (error) {
        if (stopped) return;
        console.info("event stream dropped, reconnecting", error);
      }
      if (!stopped) {
        await new Promise((resolve) => setTimeout(resolve, retryMs));
      }
    }
  })();

  return {
    stop() {
      stopped = true;
      controller.abort();
    },
    done,
  };
}
