import { describe, expect, it } from "vitest";

import { DIFF_PAIR_SCENE } from "../src/presets.js";
import {
  applyEvent,
  applyOutcome,
  applyStateDoc,
  connectScene,
  failureUtterances,
  initialView,
  setAim,
} from "../src/state.js";
import type { EventRecord, OutcomeDoc, StateDoc } from "../src/types.js";

const OUTCOME: OutcomeDoc = {
  schema_version: 1,
  mode: "vgpn",
  instruction: { verb: "goto", args: ["chair", "that"] },
  goal: { position: [2.65, 1.89], source: "object-match",
          matched_object_id: "chair1" },
  events: [],
  timing: { t1_us: 40, t2_us: 0, t3_us: 11, total_us: 55, phase2_invoked: false },
  intersection: [3.0, 1.9],
  candidates: ["chair1"],
};

function event(seq: number, type: EventRecord["type"],
               data: Record<string, unknown> = {}): EventRecord {
  return { schema_version: 1, seq, sim_time: seq * 0.5, type, data };
}

describe("connectScene", () => {
  it("resets and seeds the robot from the scene", () => {
    const view = connectScene(DIFF_PAIR_SCENE, "abc", "vgpn");
    expect(view.sessionId).toBe("abc");
    expect(view.robot?.position).toEqual(DIFF_PAIR_SCENE.robot_start.position);
    expect(view.consoleLines).toEqual([]);
  });
});

describe("applyOutcome (decision fidelity)", () => {
  it("copies intersection, candidates, goal and timing verbatim", () => {
    const view = applyOutcome(connectScene(DIFF_PAIR_SCENE, "s", "vgpn"), OUTCOME);
    expect(view.overlay.intersection).toEqual(OUTCOME.intersection);
    expect(view.overlay.candidates).toEqual(OUTCOME.candidates);
    expect(view.overlay.goal).toEqual(OUTCOME.goal);
    expect(view.timing).toEqual(OUTCOME.timing);
    expect(view.lastOutcome).toBe(OUTCOME);
  });

  it("keeps the drag aim as separate intent", () => {
    let view = setAim(connectScene(DIFF_PAIR_SCENE, "s", "vgpn"), [3.0, 1.9]);
    view = applyOutcome(view, OUTCOME);
    expect(view.overlay.aim).toEqual([3.0, 1.9]);
  });

  it("clears the path when the outcome failed", () => {
    let view = connectScene(DIFF_PAIR_SCENE, "s", "vgpn");
    view = applyStateDoc(view, {
      schema_version: 1, session_id: "s", sim_time: 1, mode: "vgpn",
      robot: { position: [1, 1], heading: 0, radius: 0.18 },
      motion_active: true, active_path: [[1, 1], [2, 2]], last_outcome: null,
    } satisfies StateDoc);
    const failed: OutcomeDoc = { ...OUTCOME, goal: null, intersection: null,
                                 candidates: [] };
    view = applyOutcome(view, failed);
    expect(view.overlay.path).toBeNull();
  });
});

describe("applyEvent", () => {
  it("appends console lines in order and tracks the cursor", () => {
    let view = connectScene(DIFF_PAIR_SCENE, "s", "vgpn");
    view = applyEvent(view, event(1, "command_received",
                                  { text: "go there", mode: "vgpn", aim: null }));
    view = applyEvent(view, event(2, "utterance",
                                  { text: "Sorry, I can't see you!", cause: "NoPerson" }));
    expect(view.consoleLines.map((l) => l.seq)).toEqual([1, 2]);
    expect(view.cursor).toBe(2);
    expect(failureUtterances(view)).toHaveLength(1);
  });

  it("ignores duplicate sequence numbers", () => {
    let view = connectScene(DIFF_PAIR_SCENE, "s", "vgpn");
    const e = event(1, "arrival", { motion_id: 1, position: [2, 2] });
    view = applyEvent(view, e);
    view = applyEvent(view, e);
    expect(view.consoleLines).toHaveLength(1);
  });

  it("updates goal and motion flags from events (replay path)", () => {
    let view = connectScene(DIFF_PAIR_SCENE, "s", "vgpn");
    view = applyEvent(view, event(1, "goal_set",
                                  { position: [2.65, 1.89], source: "object-match",
                                    matched_object_id: "chair1" }));
    expect(view.overlay.goal?.matched_object_id).toBe("chair1");
    expect(view.motionActive).toBe(true);
    view = applyEvent(view, event(2, "waypoint_reached",
                                  { motion_id: 1, index: 0, position: [1.2, 1.0] }));
    expect(view.robot?.position).toEqual([1.2, 1.0]);
    view = applyEvent(view, event(3, "arrival",
                                  { motion_id: 1, position: [2.6, 1.85] }));
    expect(view.motionActive).toBe(false);
    expect(view.robot?.position).toEqual([2.6, 1.85]);
  });
});

describe("applyStateDoc", () => {
  it("mirrors robot pose, path and motion flag", () => {
    const doc: StateDoc = {
      schema_version: 1, session_id: "s", sim_time: 2.5, mode: "vgpn",
      robot: { position: [1.5, 1.1], heading: 0.2, radius: 0.18 },
      motion_active: true,
      active_path: [[1, 1], [1.5, 1.1], [2.6, 1.85]],
      last_outcome: null,
    };
    const view = applyStateDoc(connectScene(DIFF_PAIR_SCENE, "s", "vgpn"), doc);
    expect(view.robot).toEqual(doc.robot);
    expect(view.overlay.path).toEqual(doc.active_path);
    expect(view.motionActive).toBe(true);
    expect(view.simTime).toBe(2.5);
  });
});

describe("initialView", () => {
  it("starts empty", () => {
    const view = initialView();
    expect(view.scene).toBeNull();
    expect(view.overlay.candidates).toEqual([]);
  });
});
