// Payload types mirroring the service API (see docs/api.md in the repo root).

export type Mode = "vgpn" | "pointing-only";

export type Vec2 = [number, number];

export interface SceneObjectDoc {
  id: string;
  category: string;
  position: Vec2;
  footprint_radius: number;
  properties: string[];
}

export interface GridDoc {
  resolution: number;
  width: number;
  height: number;
  origin: Vec2;
  occupancy: { encoding: "rle"; data: [number, number][] }
    | { encoding: "bits"; data: string };
}

export interface SceneDoc {
  schema_version: number;
  ground_height: number;
  camera: Record<string, unknown>;
  user: { position: Vec2; height: number };
  robot_start: { position: Vec2; heading: number; radius?: number;
                 speed?: number; turn_rate?: number };
  objects: SceneObjectDoc[];
  grid: GridDoc;
}

export interface GoalDoc {
  position: Vec2;
  source: "object-match" | "intersection" | "relative";
  matched_object_id: string | null;
}

export interface UtteranceDoc {
  text: string;
  cause: "NoPerson" | "NoGesture" | "NotUnderstood" | "NoTarget";
}

export interface TimingDoc {
  t1_us: number;
  t2_us: number;
  t3_us: number;
  total_us: number;
  phase2_invoked: boolean;
}

export interface OutcomeDoc {
  schema_version: number;
  mode: Mode;
  instruction: { verb: string; args: string[] };
  goal: GoalDoc | null;
  events: UtteranceDoc[];
  timing: TimingDoc;
  intersection: Vec2 | null;
  candidates: string[];
}

export interface CommandResponse {
  schema_version: number;
  outcome: OutcomeDoc;
  motion_id: number | null;
}

export interface RobotDoc {
  position: Vec2;
  heading: number;
  radius: number;
}

export interface StateDoc {
  schema_version: number;
  session_id: string;
  sim_time: number;
  mode: Mode;
  robot: RobotDoc;
  motion_active: boolean;
  active_path: Vec2[] | null;
  last_outcome: OutcomeDoc | null;
}

export type EventType =
  | "command_received"
  | "utterance"
  | "goal_set"
  | "waypoint_reached"
  | "arrival"
  | "collision"
  | "preempted"
  | "planning_failed";

export interface EventRecord {
  schema_version: number;
  seq: number;
  sim_time: number;
  type: EventType;
  data: Record<string, unknown>;
}

export interface EventsResponse {
  schema_version: number;
  events: EventRecord[];
  next_cursor: number;
}
