// Thin client for the demo backend's HTTP API.

import { ScreenState, TurnDoc, UiHistoryItem } from "./types.js";

export class BackendError extends Error {
  constructor(
    public status: number,
    public reason: string,
  ) {
    super(`backend ${status}: ${reason}`);
  }
}

export class BackendClient {
  constructor(
    private base = "",
    private fetchImpl: typeof fetch = fetch,
  ) {}

  private async request<T>(path: string, init?: RequestInit): Promise<T> {
    const response = await this.fetchImpl(this.base + path, init);
    const body = await response.json().catch(() => ({}));
    if (!response.ok) {
      throw new BackendError(response.status, (body as { reason?: string }).reason ?? "request failed");
    }
    return body as T;
  }

  state(): Promise<ScreenState> {
    return this.request<ScreenState>("/state");
  }

  async history(): Promise<UiHistoryItem[]> {
    const doc = await this.request<{ items: UiHistoryItem[] }>("/history");
    return doc.items;
  }

  utterance(text: string): Promise<TurnDoc> {
    return this.request<TurnDoc>("/utterance", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ text }),
    });
  }

  deeplink(link: string): Promise<{ link: string; state: ScreenState }> {
    return this.request("/deeplink", {
      method: "POST",
      headers: { "content-type": "application/json" },
      body: JSON.stringify({ link }),
    });
  }
}
