// End-to-end: drives a real service process through the client and reducers
// (everything the canvas would render, minus pixels).

import { spawn, ChildProcess } from "node:child_process";
import { afterAll, beforeAll, describe, expect, it } from "vitest";

import { ApiClient } from "../src/api.js";
import { nearestObjectId, withinOneCell } from "../src/geom.js";
import { DIFF_PAIR_SCENE } from "../src/presets.js";
import { ReplayController } from "../src/replay.js";
import {
  applyEvent,
  applyOutcome,
  applyStateDoc,
  connectScene,
  failureUtterances,
  setAim,
  ViewState,
} from "../src/state.js";
import type { Vec2 } from "../src/types.js";

const PORT = 18700 + Math.floor(Math.random() * 800);
const BASE = `http://127.0.0.1:${PORT}`;

let server: ChildProcess;

async function waitForServer(): Promise<void> {
  for (let i = 0; i < 120; i++) {
    try {
      const r = await fetch(`${BASE}/sessions/ping/state`);
      if (r.status === 404) return; // responding: unknown session is expected
    } catch {
      /* not up yet */
    }
    await new Promise((resolve) => setTimeout(resolve, 250));
  }
  throw new Error("service did not come up");
}

beforeAll(async () => {
  server = spawn("python3", ["-m", "vgpn.cli", "serve", "--port", String(PORT)],
                 { stdio: "ignore" });
  await waitForServer();
}, 40_000);

afterAll(() => {
  server?.kill();
});

async function pumpEvents(client: ApiClient, view: ViewState): Promise<ViewState> {
  const batch = await client.getEvents(view.sessionId!, view.cursor);
  for (const event of batch.events) view = applyEvent(view, event);
  return view;
}

async function settleMotion(client: ApiClient, view: ViewState,
                            timeoutMs = 20_000): Promise<ViewState> {
  const deadline = Date.now() + timeoutMs;
  while (Date.now() < deadline) {
    view = applyStateDoc(view, await client.getState(view.sessionId!));
    view = await pumpEvents(client, view);
    if (!view.motionActive && view.cursor > 0) return view;
    await new Promise((resolve) => setTimeout(resolve, 100));
  }
  throw new Error("motion did not settle");
}

describe("DIFF preset loop", () => {
  it("voice-guided command reaches the chair despite aiming at the bed, "
     + "pointing-only goes to the bed side", async () => {
    const client = new ApiClient(BASE);
    const scene = structuredClone(DIFF_PAIR_SCENE);
    const sessionId = await client.createSession(scene, { timeScale: 50 });
    let view = connectScene(scene, sessionId, "vgpn");

    // drag the aim onto the bed
    const bed = scene.objects.find((o) => o.id === "bed1")!;
    view = setAim(view, bed.position);

    const response = await client.sendCommand(sessionId, "go to that chair",
                                              view.overlay.aim, "vgpn");
    view = applyOutcome(view, response.outcome);

    // overlay: candidate set and the chair goal, not the bed; the chair is
    // unique here, so the gesture was skipped and no intersection exists
    expect(view.overlay.candidates).toContain("chair1");
    expect(view.overlay.goal?.matched_object_id).toBe("chair1");
    expect(view.timing?.phase2_invoked).toBe(false);
    expect(view.overlay.intersection).toBeNull();
    expect(response.motion_id).not.toBeNull();

    // path appears while the motion runs
    view = applyStateDoc(view, await client.getState(sessionId));
    expect(view.overlay.path?.length).toBeGreaterThan(1);

    // robot animates to arrival; console shows no failure utterance
    view = await settleMotion(client, view);
    expect(failureUtterances(view)).toEqual([]);
    const lastLine = view.consoleLines[view.consoleLines.length - 1];
    expect(lastLine.text).toContain("arrived");
    const goal = view.overlay.goal!.position;
    const robot = view.robot!.position;
    expect(Math.hypot(goal[0] - robot[0], goal[1] - robot[1])).toBeLessThan(0.15);

    // switching to pointing-only and resending lands at the bed side
    const po = await client.sendCommand(sessionId, "go to that chair",
                                        bed.position, "pointing-only");
    view = applyOutcome(view, po.outcome);
    expect(view.overlay.goal?.source).toBe("intersection");
    expect(nearestObjectId(scene, view.overlay.goal!.position)).toBe("bed1");

    await client.deleteSession(sessionId);
  }, 60_000);

  it("drag-to-G plus 'go there' renders the intersection within one cell",
     async () => {
    const client = new ApiClient(BASE);
    const scene = structuredClone(DIFF_PAIR_SCENE);
    const sessionId = await client.createSession(scene, { timeScale: 0 });
    let view = connectScene(scene, sessionId, "vgpn");
    const targets: Vec2[] = [[2.0, 3.0], [4.5, 1.0], [3.3, 2.8]];
    for (const aim of targets) {
      view = setAim(view, aim);
      const response = await client.sendCommand(sessionId, "go there",
                                                view.overlay.aim, "vgpn");
      view = applyOutcome(view, response.outcome);
      expect(view.overlay.intersection).not.toBeNull();
      expect(withinOneCell(scene.grid, view.overlay.intersection!, aim)).toBe(true);
    }
    await client.deleteSession(sessionId);
  }, 30_000);

  it("replay from cursor 0 reproduces the live console", async () => {
    const client = new ApiClient(BASE);
    const scene = structuredClone(DIFF_PAIR_SCENE);
    const sessionId = await client.createSession(scene, { timeScale: 50 });
    let view = connectScene(scene, sessionId, "vgpn");
    const response = await client.sendCommand(
      sessionId, "go to that chair", [3.0, 1.9], "vgpn");
    view = applyOutcome(view, response.outcome);
    view = await settleMotion(client, view);

    const all = await client.getEvents(sessionId, 0);
    const replay = new ReplayController(scene, "vgpn", all.events);
    const replayed = replay.viewAt(all.events.length);
    expect(replayed.consoleLines).toEqual(view.consoleLines);
    expect(replayed.overlay.goal).toEqual(view.overlay.goal);
    await client.deleteSession(sessionId);
  }, 60_000);

  it("failure utterances reach the console verbatim", async () => {
    const client = new ApiClient(BASE);
    const scene = structuredClone(DIFF_PAIR_SCENE);
    const sessionId = await client.createSession(scene, { timeScale: 0 });
    let view = connectScene(scene, sessionId, "vgpn");
    const response = await client.sendCommand(sessionId, "go there", null, "vgpn");
    view = applyOutcome(view, response.outcome);
    view = await pumpEvents(client, view);
    const utterances = failureUtterances(view);
    expect(utterances).toHaveLength(1);
    expect(utterances[0].text).toContain("Sorry, I can't see you!");
    expect(view.overlay.goal).toBeNull();
    await client.deleteSession(sessionId);
  }, 30_000);
});
