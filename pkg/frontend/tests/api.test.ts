import { describe, expect, it, vi } from "vitest";

import { ApiClient, ApiError } from "../src/api.js";
import { DIFF_PAIR_SCENE } from "../src/presets.js";
import type { EventRecord } from "../src/types.js";

function jsonResponse(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "content-type": "application/json" },
  });
}

describe("ApiClient", () => {
  it("creates sessions with scene, mode and time scale", async () => {
    const fetchMock = vi.fn().mockResolvedValue(
      jsonResponse({ schema_version: 1, session_id: "abc123" }));
    const client = new ApiClient("http://host:1/", fetchMock);
    const id = await client.createSession(DIFF_PAIR_SCENE,
                                          { mode: "vgpn", timeScale: 5 });
    expect(id).toBe("abc123");
    const [url, init] = fetchMock.mock.calls[0];
    expect(url).toBe("http://host:1/sessions");
    expect(init.method).toBe("POST");
    const body = JSON.parse(init.body);
    expect(body.scene.schema_version).toBe(1);
    expect(body.mode).toBe("vgpn");
    expect(body.time_scale).toBe(5);
  });

  it("omits aim when null and sends it when set", async () => {
    const fetchMock = vi.fn().mockResolvedValue(
      jsonResponse({ schema_version: 1, outcome: {}, motion_id: null }));
    const client = new ApiClient("http://host:1", fetchMock);
    await client.sendCommand("s1", "go there", null);
    expect(JSON.parse(fetchMock.mock.calls[0][1].body)).toEqual(
      { text: "go there" });
    await client.sendCommand("s1", "go there", [3, 1.9], "pointing-only");
    expect(JSON.parse(fetchMock.mock.calls[1][1].body)).toEqual(
      { text: "go there", aim: [3, 1.9], mode: "pointing-only" });
  });

  it("addresses events with the cursor", async () => {
    const fetchMock = vi.fn().mockResolvedValue(
      jsonResponse({ schema_version: 1, events: [], next_cursor: 4 }));
    const client = new ApiClient("http://host:1", fetchMock);
    await client.getEvents("s1", 4);
    expect(fetchMock.mock.calls[0][0]).toBe("http://host:1/sessions/s1/events?since=4");
  });

  it("raises ApiError with the server detail", async () => {
    const fetchMock = vi.fn().mockImplementation(() =>
      Promise.resolve(jsonResponse({ error: "unknown session: nope" }, 404)));
    const client = new ApiClient("http://host:1", fetchMock);
    await expect(client.getState("nope")).rejects.toThrowError(ApiError);
    await expect(client.getState("nope")).rejects.toThrowError(/unknown session/);
  });

  it("falls back to polling when no websocket exists", async () => {
    const batches: EventRecord[][] = [
      [{ schema_version: 1, seq: 1, sim_time: 0, type: "command_received", data: {} }],
      [{ schema_version: 1, seq: 2, sim_time: 1, type: "arrival", data: {} }],
      [],
    ];
    let call = 0;
    const fetchMock = vi.fn().mockImplementation(() => {
      const events = batches[Math.min(call++, batches.length - 1)];
      return Promise.resolve(jsonResponse({
        schema_version: 1, events,
        next_cursor: events.length ? events[events.length - 1].seq : 0,
      }));
    });
    const client = new ApiClient("http://host:1", fetchMock);
    const seen: number[] = [];
    const stop = client.subscribe("s1", 0, (e) => seen.push(e.seq), 5);
    await new Promise((resolve) => setTimeout(resolve, 60));
    stop();
    expect(seen).toEqual([1, 2]);
    // cursor advanced between polls
    expect(fetchMock.mock.calls[1][0]).toContain("since=1");
  });
});
