"""Session-oriented HTTP service around the pipeline and simulator.

Each session owns a scene, a pipeline, and the simulated robot.  Commands run
synchronously (the outcome is returned in the response); the resulting motion
plays out on a session-owned virtual clock that advances with wall time
scaled by the session's ``time_scale`` (0 freezes the simulation).  Every
observable change is appended to a gap-free, cursor-addressable event log,
also pushed over a websocket subscription channel.

Endpoints and payload schemas are documented in docs/api.md; all payloads
carry ``schema_version``.
"""

from __future__ import annotations

import json
import threading
import time
import uuid
from dataclasses import dataclass

import numpy as np
from fastapi import FastAPI, Request, WebSocket, WebSocketDisconnect
from fastapi.middleware.cors import CORSMiddleware
from fastapi.responses import JSONResponse

from . import geometry, nav, world
from .errors import PlanningError, SceneInvalid, UnknownSession, VgpnError
from .language import load_lexicon, load_templates
from .pipeline import (
    MODE_POINTING_ONLY,
    MODE_VGPN,
    Pipeline,
    PipelineOutcome,
    outcome_to_doc,
)

SCHEMA_VERSION = 1

EVENT_COMMAND = "command_received"
EVENT_UTTERANCE = "utterance"
EVENT_GOAL = "goal_set"
EVENT_WAYPOINT = "waypoint_reached"
EVENT_ARRIVAL = "arrival"
EVENT_COLLISION = "collision"
EVENT_PREEMPTED = "preempted"
EVENT_PLANNING_FAILED = "planning_failed"


def frame_from_doc(doc: dict) -> geometry.KeypointFrame:
    points = {}
    for name in geometry.KEYPOINT_NAMES:
        value = doc.get(name)
        if value is not None:
            points[name] = np.asarray(value, dtype=np.float64)
    return geometry.KeypointFrame(**points)


def frame_for_aim(scene: world.Scene, aim_point) -> geometry.KeypointFrame:
    """Synthesize the user's pointing frame for a ground aim point (the
    server-side stand-in for skeleton detection)."""
    return geometry.synthesize_frame(
        scene.user.position, scene.user.height, aim_point,
        transform_inverse=scene.camera.inverse(),
        ground_height=scene.ground_height)


@dataclass
class ActiveMotion:
    motion_id: int
    trajectory: nav.Trajectory
    start_sim: float
    next_waypoint: int = 0
    done: bool = False


@dataclass
class EventRecord:
    seq: int
    sim_time: float
    type: str
    data: dict

    def to_doc(self) -> dict:
        return {"schema_version": SCHEMA_VERSION, "seq": self.seq,
                "sim_time": round(self.sim_time, 6), "type": self.type,
                "data": self.data}


class Session:
    """One robot simulation with serialized command handling.

    ``wall_clock`` returns seconds; the simulation advances lazily whenever
    the session is observed, by elapsed wall time times ``time_scale``.
    """

    def __init__(self, scene: world.Scene, mode: str = MODE_VGPN,
                 time_scale: float = 1.0, lexicon=None, registry=None,
                 pipeline_clock=time.perf_counter_ns,
                 wall_clock=time.monotonic):
        self.id = uuid.uuid4().hex[:12]
        self.scene = scene
        self.mode = mode
        self.time_scale = time_scale
        self.pipeline = Pipeline(scene, lexicon, registry, clock=pipeline_clock)
        self.robot = scene.robot_start
        self.wall_clock = wall_clock
        self.lock = threading.RLock()
        self.events: list[EventRecord] = []
        self.sim_time = 0.0
        self.motion: ActiveMotion | None = None
        self.motion_counter = 0
        self.last_outcome: PipelineOutcome | None = None
        self.closed = False
        self._last_wall = wall_clock()

    # --- event log -------------------------------------------------------

    def _emit(self, type_: str, data: dict, sim_time: float | None = None):
        record = EventRecord(len(self.events) + 1,
                             self.sim_time if sim_time is None else sim_time,
                             type_, data)
        self.events.append(record)
        return record

    def events_since(self, cursor: int) -> list[EventRecord]:
        with self.lock:
            self._advance()
            return [e for e in self.events if e.seq > cursor]

    # --- simulation time ---------------------------------------------------

    def _advance(self):
        now = self.wall_clock()
        dt = (now - self._last_wall) * self.time_scale
        self._last_wall = now
        if dt > 0:
            self._advance_sim(self.sim_time + dt)

    def _advance_sim(self, target_time: float):
        motion = self.motion
        if motion is None or motion.done:
            self.sim_time = target_time
            return
        traj = motion.trajectory
        end_sim = motion.start_sim + traj.duration()
        horizon = min(target_time, end_sim)
        # release waypoint events crossed by this step
        for index, t_rel in traj.waypoint_times[motion.next_waypoint:]:
            t_abs = motion.start_sim + t_rel
            if t_abs > horizon:
                break
            wp = traj.plan.waypoints[index] if traj.plan else None
            self._emit(EVENT_WAYPOINT,
                       {"motion_id": motion.motion_id, "index": index,
                        "position": None if wp is None else
                        [round(float(wp[0]), 6), round(float(wp[1]), 6)]},
                       sim_time=t_abs)
            motion.next_waypoint += 1
        sample = traj.state_at(horizon - motion.start_sim)
        self.robot = nav.RobotState(np.array([sample.x, sample.y]),
                                    sample.heading, self.robot.radius,
                                    self.robot.speed, self.robot.turn_rate)
        if target_time >= end_sim:
            motion.done = True
            final = traj.final_state
            data = {"motion_id": motion.motion_id,
                    "position": [round(final.x, 6), round(final.y, 6)]}
            self._emit(EVENT_COLLISION if traj.collision else EVENT_ARRIVAL,
                       data, sim_time=end_sim)
            self.motion = None
        self.sim_time = target_time

    # --- commands ------------------------------------------------------------

    def submit(self, text: str, aim=None, frame_doc: dict | None = None,
               mode: str | None = None) -> tuple[PipelineOutcome, int | None]:
        with self.lock:
            self._advance()
            if self.motion is not None and not self.motion.done:
                self._emit(EVENT_PREEMPTED,
                           {"motion_id": self.motion.motion_id,
                            "position": [round(float(self.robot.position[0]), 6),
                                         round(float(self.robot.position[1]), 6)]})
                self.motion = None
            use_mode = mode or self.mode

            frame = None
            if frame_doc is not None:
                frame = frame_from_doc(frame_doc)
            elif aim is not None:
                frame = frame_for_aim(self.scene, aim)

            self._emit(EVENT_COMMAND, {"text": text, "mode": use_mode,
                                       "aim": None if aim is None else
                                       [float(aim[0]), float(aim[1])]})
            outcome = self.pipeline.handle(text, frame, use_mode,
                                           robot_state=self.robot)
            self.last_outcome = outcome
            for event in outcome.events:
                self._emit(EVENT_UTTERANCE, {"text": event.text,
                                             "cause": event.cause})
            motion_id = None
            if outcome.goal is not None:
                self._emit(EVENT_GOAL, {
                    "position": [round(float(outcome.goal.position[0]), 6),
                                 round(float(outcome.goal.position[1]), 6)],
                    "source": outcome.goal.source,
                    "matched_object_id": outcome.goal.matched_object_id,
                })
                motion_id = self._start_motion(outcome)
            return outcome, motion_id

    def _start_motion(self, outcome: PipelineOutcome) -> int | None:
        try:
            trajectory = nav.execute(outcome.instruction, outcome.goal,
                                     self.robot, self.scene.grid)
        except PlanningError as exc:
            self._emit(EVENT_PLANNING_FAILED, {"error": str(exc)})
            return None
        self.motion_counter += 1
        self.motion = ActiveMotion(self.motion_counter, trajectory,
                                   self.sim_time)
        return self.motion_counter

    # --- state ------------------------------------------------------------------

    def state_doc(self) -> dict:
        with self.lock:
            self._advance()
            path = None
            if self.motion is not None and self.motion.trajectory.plan is not None:
                path = [[round(float(w[0]), 6), round(float(w[1]), 6)]
                        for w in self.motion.trajectory.plan.waypoints]
            return {
                "schema_version": SCHEMA_VERSION,
                "session_id": self.id,
                "sim_time": round(self.sim_time, 6),
                "mode": self.mode,
                "robot": {
                    "position": [round(float(self.robot.position[0]), 6),
                                 round(float(self.robot.position[1]), 6)],
                    "heading": round(float(self.robot.heading), 6),
                    "radius": self.robot.radius,
                },
                "motion_active": self.motion is not None,
                "active_path": path,
                "last_outcome": (None if self.last_outcome is None
                                 else outcome_to_doc(self.last_outcome)),
            }


class SessionManager:
    def __init__(self, pipeline_clock=time.perf_counter_ns,
                 wall_clock=time.monotonic):
        self.sessions: dict[str, Session] = {}
        self.lock = threading.Lock()
        self.pipeline_clock = pipeline_clock
        self.wall_clock = wall_clock
        self._lexicon = load_lexicon()
        self._registry = load_templates()

    def create(self, scene_doc: dict, mode: str = MODE_VGPN,
               time_scale: float = 1.0) -> Session:
        scene = world.scene_from_doc(scene_doc)
        if mode not in (MODE_VGPN, MODE_POINTING_ONLY):
            raise SceneInvalid("$.mode", f"unknown mode {mode!r}")
        session = Session(scene, mode, time_scale, self._lexicon,
                          self._registry, self.pipeline_clock, self.wall_clock)
        with self.lock:
            self.sessions[session.id] = session
        return session

    def get(self, session_id: str) -> Session:
        with self.lock:
            session = self.sessions.get(session_id)
        if session is None:
            raise UnknownSession(session_id)
        return session

    def delete(self, session_id: str) -> None:
        with self.lock:
            session = self.sessions.pop(session_id, None)
        if session is None:
            raise UnknownSession(session_id)
        session.closed = True


def create_app(manager: SessionManager | None = None) -> FastAPI:
    """Build the FastAPI app; a custom manager injects deterministic clocks
    for tests."""
    manager = manager or SessionManager()
    app = FastAPI(title="vgpn service")
    app.state.manager = manager
    app.add_middleware(CORSMiddleware, allow_origins=["*"],
                       allow_methods=["*"], allow_headers=["*"])

    @app.exception_handler(UnknownSession)
    async def _unknown_session(_request, exc):
        return JSONResponse(status_code=404, content={"error": str(exc)})

    @app.exception_handler(VgpnError)
    async def _vgpn_error(_request, exc):
        return JSONResponse(status_code=400, content={"error": str(exc)})

    @app.post("/sessions")
    async def create_session(request: Request):
        body = await request.json()
        if not isinstance(body, dict) or "scene" not in body:
            return JSONResponse(status_code=400,
                                content={"error": "body needs a 'scene' document"})
        session = manager.create(body["scene"],
                                 mode=body.get("mode", MODE_VGPN),
                                 time_scale=float(body.get("time_scale", 1.0)))
        return {"schema_version": SCHEMA_VERSION, "session_id": session.id}

    @app.post("/sessions/{session_id}/command")
    async def submit_command(session_id: str, request: Request):
        session = manager.get(session_id)
        body = await request.json()
        if not isinstance(body, dict) or "text" not in body:
            return JSONResponse(status_code=400,
                                content={"error": "body needs 'text'"})
        aim = body.get("aim")
        frame_doc = body.get("frame")
        if aim is not None and frame_doc is not None:
            return JSONResponse(status_code=400,
                                content={"error": "give 'aim' or 'frame', not both"})
        outcome, motion_id = session.submit(body["text"], aim, frame_doc,
                                            body.get("mode"))
        return {"schema_version": SCHEMA_VERSION,
                "outcome": outcome_to_doc(outcome),
                "motion_id": motion_id}

    @app.get("/sessions/{session_id}/state")
    async def session_state(session_id: str):
        return manager.get(session_id).state_doc()

    @app.get("/sessions/{session_id}/events")
    async def session_events(session_id: str, since: int = 0):
        session = manager.get(session_id)
        events = session.events_since(since)
        return {"schema_version": SCHEMA_VERSION,
                "events": [e.to_doc() for e in events],
                "next_cursor": events[-1].seq if events else since}

    @app.delete("/sessions/{session_id}")
    async def delete_session(session_id: str):
        manager.delete(session_id)
        return {"schema_version": SCHEMA_VERSION, "deleted": True}

    @app.websocket("/sessions/{session_id}/subscribe")
    async def subscribe(websocket: WebSocket, session_id: str, since: int = 0):
        import asyncio
        try:
            session = manager.get(session_id)
        except UnknownSession:
            await websocket.close(code=4404)
            return
        await websocket.accept()
        cursor = since
        try:
            while not session.closed:
                for record in session.events_since(cursor):
                    await websocket.send_text(json.dumps(record.to_doc()))
                    cursor = record.seq
                await asyncio.sleep(0.05)
            await websocket.close()
        except WebSocketDisconnect:
            pass

    return app
