// DOM wiring: connect to the service, drag-to-point, command console,
// mode toggle, timing panel, replay.

import { ApiClient } from "./api.js";
import { clampToGrid, screenToWorld } from "./geom.js";
import { PRESETS } from "./presets.js";
import { SceneRenderer } from "./render.js";
import { ReplayController } from "./replay.js";
import {
  applyEvent,
  applyOutcome,
  applyStateDoc,
  connectScene,
  initialView,
  setAim,
  setMode,
  ViewState,
} from "./state.js";
import type { Mode, SceneDoc, Vec2 } from "./types.js";

const $ = <T extends HTMLElement>(id: string): T =>
  document.getElementById(id) as T;

const canvas = $("scene") as unknown as HTMLCanvasElement;
const renderer = new SceneRenderer(canvas);

let view: ViewState = initialView();
let client: ApiClient | null = null;
let unsubscribe: (() => void) | null = null;
let statePoller: number | null = null;
let replay: ReplayController | null = null;
let currentScene: SceneDoc | null = null;
let placingUser = false;

function update(next: ViewState): void {
  view = next;
  renderer.draw(view);
  renderConsole();
  renderTiming();
  $("session-label").textContent = view.sessionId
    ? `session ${view.sessionId} (${view.mode})` : "not connected";
}

function renderConsole(): void {
  const box = $("console");
  box.innerHTML = "";
  for (const line of view.consoleLines.slice(-200)) {
    const div = document.createElement("div");
    div.className = `line ${line.kind}`;
    div.textContent = `[${line.simTime.toFixed(1)}s] ${line.text}`;
    box.appendChild(div);
  }
  box.scrollTop = box.scrollHeight;
}

function renderTiming(): void {
  const t = view.timing;
  $("timing").textContent = t === null
    ? "t1 – | t2 – | t3 – | total –"
    : `t1 ${t.t1_us}us | t2 ${t.t2_us}us | t3 ${t.t3_us}us | ` +
      `total ${t.total_us}us | phase2 ${t.phase2_invoked ? "ran" : "skipped"}`;
}

async function connect(scene: SceneDoc): Promise<void> {
  teardown();
  const base = ($("service-url") as HTMLInputElement).value || "http://127.0.0.1:8080";
  client = new ApiClient(base);
  currentScene = scene;
  const mode = currentMode();
  const sessionId = await client.createSession(scene, { mode, timeScale: 1.0 });
  renderer.prepare(scene);
  update(connectScene(scene, sessionId, mode));
  unsubscribe = client.subscribe(sessionId, 0, (event) => {
    if (replay === null) {
      update(applyEvent(view, event));
    }
  });
  statePoller = window.setInterval(async () => {
    if (!client || !view.sessionId || replay !== null) return;
    try {
      update(applyStateDoc(view, await client.getState(view.sessionId)));
    } catch {
      /* session gone */
    }
  }, 120);
}

function teardown(): void {
  unsubscribe?.();
  unsubscribe = null;
  if (statePoller !== null) {
    window.clearInterval(statePoller);
    statePoller = null;
  }
  replay = null;
}

function currentMode(): Mode {
  return ($("mode-toggle") as HTMLInputElement).checked ? "pointing-only" : "vgpn";
}

async function sendCommand(): Promise<void> {
  if (!client || !view.sessionId) return;
  const text = ($("command") as HTMLInputElement).value.trim();
  if (!text) return;
  const response = await client.sendCommand(view.sessionId, text,
                                            view.overlay.aim, currentMode());
  update(applyOutcome(setMode(view, currentMode()), response.outcome));
}

// --- pointing drag ------------------------------------------------------------

let dragging = false;

canvas.addEventListener("mousedown", (ev) => {
  if (!view.scene || !renderer.vp || replay !== null) return;
  const rect = canvas.getBoundingClientRect();
  const world = screenToWorld(renderer.vp,
                              [ev.clientX - rect.left, ev.clientY - rect.top]);
  if (placingUser && currentScene) {
    const moved = structuredClone(currentScene);
    moved.user.position = clampToGrid(currentScene, world);
    placingUser = false;
    $("place-user").classList.remove("active");
    void connect(moved);
    return;
  }
  dragging = true;
  update(setAim(view, clampToGrid(view.scene, world)));
});

canvas.addEventListener("mousemove", (ev) => {
  if (!dragging || !view.scene || !renderer.vp) return;
  const rect = canvas.getBoundingClientRect();
  const world = screenToWorld(renderer.vp,
                              [ev.clientX - rect.left, ev.clientY - rect.top]);
  update(setAim(view, clampToGrid(view.scene, world)));
});

window.addEventListener("mouseup", () => {
  dragging = false;
});

// --- controls -------------------------------------------------------------------

$("send").addEventListener("click", () => void sendCommand());
($("command") as HTMLInputElement).addEventListener("keydown", (ev) => {
  if ((ev as KeyboardEvent).key === "Enter") void sendCommand();
});
$("clear-aim").addEventListener("click", () => update(setAim(view, null)));
$("place-user").addEventListener("click", () => {
  placingUser = !placingUser;
  $("place-user").classList.toggle("active", placingUser);
});

for (const [name, label] of [["diff_pair", "DIFF preset"],
                             ["same_pair", "SAME preset"],
                             ["playground", "playground"],
                             ["unique_door", "unique door"]] as const) {
  const button = document.createElement("button");
  button.textContent = label;
  button.addEventListener("click", () => void connect(structuredClone(PRESETS[name])));
  $("presets").appendChild(button);
}

$("mode-toggle").addEventListener("change", () => update(setMode(view, currentMode())));

// --- replay -----------------------------------------------------------------------

$("replay-start").addEventListener("click", async () => {
  if (!client || !view.sessionId || !currentScene) return;
  const all = await client.getEvents(view.sessionId, 0);
  replay = new ReplayController(currentScene, view.mode, all.events);
  $("replay-bar").classList.remove("hidden");
  const slider = $("replay-slider") as HTMLInputElement;
  slider.max = String(replay.length);
  slider.value = "0";
  update(replay.viewAt(0));
});

($("replay-slider") as HTMLInputElement).addEventListener("input", (ev) => {
  if (!replay) return;
  update(replay.viewAt(Number((ev.target as HTMLInputElement).value)));
});

$("replay-step").addEventListener("click", () => {
  if (!replay) return;
  ($("replay-slider") as HTMLInputElement).value = String(replay.index + 1);
  update(replay.step(1));
});

$("replay-live").addEventListener("click", () => {
  replay = null;
  $("replay-bar").classList.add("hidden");
});

update(view);
