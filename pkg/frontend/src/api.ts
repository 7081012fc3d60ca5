// Thin client over the session service endpoints; no decision logic here.

import type {
  CommandResponse,
  EventRecord,
  EventsResponse,
  Mode,
  SceneDoc,
  StateDoc,
  Vec2,
} from "./types.js";

type FetchLike = typeof fetch;

export class ApiError extends Error {
  constructor(public status: number, message: string) {
    super(message);
  }
}

async function asJson<T>(response: Response): Promise<T> {
  const body = await response.json().catch(() => ({}));
  if (!response.ok) {
    const detail = (body as { error?: string }).error ?? response.statusText;
    throw new ApiError(response.status, detail);
  }
  return body as T;
}

export class ApiClient {
  constructor(
    public baseUrl: string,
    private fetchImpl: FetchLike = fetch.bind(globalThis),
  ) {
    this.baseUrl = baseUrl.replace(/\/+$/, "");
  }

  private async request<T>(method: string, path: string, body?: unknown): Promise<T> {
    const response = await this.fetchImpl(`${this.baseUrl}${path}`, {
      method,
      headers: body === undefined ? undefined : { "content-type": "application/json" },
      body: body === undefined ? undefined : JSON.stringify(body),
    });
    return asJson<T>(response);
  }

  async createSession(scene: SceneDoc, options: { mode?: Mode; timeScale?: number } = {}):
      Promise<string> {
    const body: Record<string, unknown> = { scene };
    if (options.mode !== undefined) body.mode = options.mode;
    if (options.timeScale !== undefined) body.time_scale = options.timeScale;
    const doc = await this.request<{ session_id: string }>("POST", "/sessions", body);
    return doc.session_id;
  }

  async sendCommand(sessionId: string, text: string, aim: Vec2 | null,
                    mode?: Mode): Promise<CommandResponse> {
    const body: Record<string, unknown> = { text };
    if (aim !== null) body.aim = aim;
    if (mode !== undefined) body.mode = mode;
    return this.request<CommandResponse>("POST", `/sessions/${sessionId}/command`, body);
  }

  async getState(sessionId: string): Promise<StateDoc> {
    return this.request<StateDoc>("GET", `/sessions/${sessionId}/state`);
  }

  async getEvents(sessionId: string, since = 0): Promise<EventsResponse> {
    return this.request<EventsResponse>(
      "GET", `/sessions/${sessionId}/events?since=${since}`);
  }

  async deleteSession(sessionId: string): Promise<void> {
    await this.request("DELETE", `/sessions/${sessionId}`);
  }

  /** Long-lived event subscription: a websocket where available, polling
   * otherwise.  Returns an unsubscribe function. */
  subscribe(sessionId: string, since: number,
            onEvent: (event: EventRecord) => void,
            pollMs = 150): () => void {
    const WS = (globalThis as { WebSocket?: typeof WebSocket }).WebSocket;
    if (WS !== undefined) {
      const wsUrl = this.baseUrl.replace(/^http/, "ws")
        + `/sessions/${sessionId}/subscribe?since=${since}`;
      const socket = new WS(wsUrl);
      socket.onmessage = (msg) => onEvent(JSON.parse(msg.data as string));
      return () => socket.close();
    }
    let cursor = since;
    let stopped = false;
    const poll = async () => {
      while (!stopped) {
        try {
          const batch = await this.getEvents(sessionId, cursor);
          for (const event of batch.events) {
            cursor = event.seq;
            onEvent(event);
          }
        } catch {
          break;
        }
        await new Promise((resolve) => setTimeout(resolve, pollMs));
      }
    };
    void poll();
    return () => { stopped = true; };
  }
}
