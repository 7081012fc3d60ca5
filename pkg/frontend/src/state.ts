// View state and its reducers.
//
// Decision fidelity: everything on the overlay (intersection, candidates,
// goal, path) is copied verbatim from service payloads.  The client never
// recomputes a decision; the drag-derived aim is the only client-owned value
// and is rendered as intent, not as a result.

import type {
  EventRecord,
  GoalDoc,
  Mode,
  OutcomeDoc,
  RobotDoc,
  SceneDoc,
  StateDoc,
  TimingDoc,
  Vec2,
} from "./types.js";

export interface Overlay {
  aim: Vec2 | null;
  intersection: Vec2 | null;
  candidates: string[];
  goal: GoalDoc | null;
  path: Vec2[] | null;
}

export interface ConsoleLine {
  seq: number;
  simTime: number;
  kind: "event" | "utterance" | "info";
  text: string;
}

export interface ViewState {
  scene: SceneDoc | null;
  sessionId: string | null;
  mode: Mode;
  robot: RobotDoc | null;
  motionActive: boolean;
  simTime: number;
  overlay: Overlay;
  consoleLines: ConsoleLine[];
  timing: TimingDoc | null;
  lastOutcome: OutcomeDoc | null;
  cursor: number;
}

export function initialView(): ViewState {
  return {
    scene: null,
    sessionId: null,
    mode: "vgpn",
    robot: null,
    motionActive: false,
    simTime: 0,
    overlay: { aim: null, intersection: null, candidates: [], goal: null, path: null },
    consoleLines: [],
    timing: null,
    lastOutcome: null,
    cursor: 0,
  };
}

export function connectScene(scene: SceneDoc, sessionId: string,
                             mode: Mode): ViewState {
  return {
    ...initialView(),
    scene,
    sessionId,
    mode,
    robot: {
      position: [...scene.robot_start.position] as Vec2,
      heading: scene.robot_start.heading,
      radius: scene.robot_start.radius ?? 0.18,
    },
  };
}

export function setAim(view: ViewState, aim: Vec2 | null): ViewState {
  return { ...view, overlay: { ...view.overlay, aim } };
}

export function setMode(view: ViewState, mode: Mode): ViewState {
  return { ...view, mode };
}

/** Fold a command outcome into the overlay and timing panel (service data
 * only). */
export function applyOutcome(view: ViewState, outcome: OutcomeDoc): ViewState {
  return {
    ...view,
    overlay: {
      ...view.overlay,
      intersection: outcome.intersection,
      candidates: [...outcome.candidates],
      goal: outcome.goal,
      path: outcome.goal === null ? null : view.overlay.path,
    },
    timing: outcome.timing,
    lastOutcome: outcome,
  };
}

/** Fold a polled state document: robot pose, active path, motion flag. */
export function applyStateDoc(view: ViewState, doc: StateDoc): ViewState {
  return {
    ...view,
    robot: doc.robot,
    motionActive: doc.motion_active,
    simTime: doc.sim_time,
    overlay: { ...view.overlay, path: doc.active_path },
  };
}

function describeEvent(event: EventRecord): string {
  const d = event.data as Record<string, unknown>;
  switch (event.type) {
    case "command_received":
      return `> "${d.text}" (${d.mode}${d.aim ? `, aim ${fmtVec(d.aim as Vec2)}` : ""})`;
    case "utterance":
      return `robot says: ${d.text}`;
    case "goal_set":
      return `goal ${fmtVec(d.position as Vec2)} [${d.source}`
        + `${d.matched_object_id ? ` ${d.matched_object_id}` : ""}]`;
    case "waypoint_reached":
      return `waypoint ${d.index}`;
    case "arrival":
      return `arrived at ${fmtVec(d.position as Vec2)}`;
    case "collision":
      return `collision stop at ${fmtVec(d.position as Vec2)}`;
    case "preempted":
      return `motion preempted at ${fmtVec(d.position as Vec2)}`;
    case "planning_failed":
      return `planning failed: ${d.error}`;
  }
}

function fmtVec(v: Vec2): string {
  return `(${v[0].toFixed(2)}, ${v[1].toFixed(2)})`;
}

/** Fold one event record: console line, motion bookkeeping, and (for replay)
 * overlay/robot updates derived purely from event payloads. */
export function applyEvent(view: ViewState, event: EventRecord): ViewState {
  if (event.seq <= view.cursor) {
    return view;  // already applied (subscription overlap)
  }
  const next: ViewState = { ...view, cursor: event.seq, simTime: event.sim_time };
  const line: ConsoleLine = {
    seq: event.seq,
    simTime: event.sim_time,
    kind: event.type === "utterance" ? "utterance" : "event",
    text: describeEvent(event),
  };
  next.consoleLines = [...view.consoleLines, line];

  const d = event.data as Record<string, unknown>;
  switch (event.type) {
    case "goal_set":
      next.overlay = {
        ...next.overlay,
        goal: {
          position: d.position as Vec2,
          source: d.source as GoalDoc["source"],
          matched_object_id: (d.matched_object_id ?? null) as string | null,
        },
      };
      next.motionActive = true;
      break;
    case "waypoint_reached":
      if (next.robot && d.position) {
        next.robot = { ...next.robot, position: d.position as Vec2 };
      }
      break;
    case "arrival":
    case "collision":
    case "preempted":
      if (next.robot && d.position) {
        next.robot = { ...next.robot, position: d.position as Vec2 };
      }
      next.motionActive = false;
      break;
    case "planning_failed":
      next.motionActive = false;
      break;
    default:
      break;
  }
  return next;
}

export function failureUtterances(view: ViewState): ConsoleLine[] {
  return view.consoleLines.filter((line) => line.kind === "utterance");
}
