import { describe, expect, it } from "vitest";

import { SseParser, subscribeEvents } from "../src/sse.js";
import { BackendEvent } from "../src/types.js";

describe("SseParser", () => {
  it("parses data frames separated by blank lines", () => {
    const parser = new SseParser();
    const events = parser.push('data: {"kind": "speech", "text": "hi"}\n\n');
    expect(events).toEqual([{ kind: "speech", text: "hi" }]);
  });

  it("handles chunk boundaries mid-frame", () => {
    const parser = new SseParser();
    expect(parser.push('data: {"kind": "spee')).toEqual([]);
    expect(parser.push('ch", "text": "split"}')).toEqual([]);
    expect(parser.push("\n\n")).toEqual([{ kind: "speech", text: "split" }]);
  });

  it("skips comment heartbeats", () => {
    const parser = new SseParser();
    expect(parser.push(": ping\n\n: ping\n\n")).toEqual([]);
  });

  it("drops unparseable payloads without throwing", () => {
    const parser = new SseParser();
    expect(parser.push("data: {broken\n\n")).toEqual([]);
    expect(parser.push('data: {"kind": "speech", "text": "after"}\n\n')).toHaveLength(1);
  });
});

function streamResponse(frames: string[]): Response {
  const encoder = new TextEncoder();
  const body = new ReadableStream<Uint8Array>({
    start(controller) {
      for (const frame of frames) controller.enqueue(encoder.encode(frame));
      controller.close();
    },
  });
  return new Response(body, { status: 200, headers: { "content-type": "text/event-stream" } });
}

describe("subscribeEvents", () => {
  it("delivers events and resyncs on reconnect", async () => {
    const received: BackendEvent[] = [];
    let resyncs = 0;
    let connections = 0;

    const fetchImpl = (async () => {
      connections += 1;
      if (connections === 1) {
        return streamResponse(['data: {"kind": "speech", "text": "one"}\n\n']);
      }
      return streamResponse(['data: {"kind": "speech", "text": "two"}\n\n']);
    }) as typeof fetch;

    const subscription = subscribeEvents("/events", {
      onEvent: (event) => {
        received.push(event);
        if (received.length === 2) subscription.stop();
      },
      onResync: () => {
        resyncs += 1;
      },
      retryMs: 1,
      fetchImpl,
    });
    await subscription.done;

    expect(received.map((e) => (e as { text: string }).text)).toEqual(["one", "two"]);
    expect(resyncs).toBeGreaterThanOrEqual(1);
    expect(connections).toBeGreaterThanOrEqual(2);
  });
});
