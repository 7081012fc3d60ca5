"""End-to-end command pipeline with per-phase timing.

Phase 1 understands the command text, phase 2 estimates the pointing ray
(only when the command needs it), phase 3 computes the ground intersection
and decides the navigation target.  The pointing-only baseline skips phase 1
entirely and always runs the gesture path, navigating to the raw ground
intersection.

Timing mirrors the classic decomposition: t1 command understanding, t2 ray
estimation, t3 everything else through goal publication (including the
intersection computation).  All failures surface as utterance events on the
outcome, never as exceptions.
"""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from . import geometry, nav, world
from .errors import (
    LanguageError,
    MissingIntersection,
    NoGroundIntersection,
    NoSuchObject,
)
from .language import (
    Instruction,
    Lexicon,
    TemplateRegistry,
    description_of,
    instruction_kind,
    load_lexicon,
    load_templates,
    parse_command,
    requires_gesture,
)

MODE_VGPN = "vgpn"
MODE_POINTING_ONLY = "pointing-only"

CAUSE_NO_PERSON = "NoPerson"
CAUSE_NO_GESTURE = "NoGesture"
CAUSE_NOT_UNDERSTOOD = "NotUnderstood"
CAUSE_NO_TARGET = "NoTarget"

UTTERANCES = {
    CAUSE_NO_PERSON: "Sorry, I can't see you!",
    CAUSE_NO_GESTURE: "Sorry, where are you pointing at?",
    CAUSE_NOT_UNDERSTOOD: "Sorry, I don't understand.",
    CAUSE_NO_TARGET: "Sorry, I can't find that.",
}

#: placeholder instruction attached to pointing-only outcomes (no parsing runs)
POINTING_TRIGGER = Instruction("point")


@dataclass(frozen=True)
class UtteranceEvent:
    text: str
    cause: str

    @classmethod
    def of(cls, cause: str) -> "UtteranceEvent":
        return cls(UTTERANCES[cause], cause)


@dataclass(frozen=True)
class TimingRecord:
    t1: int  # microseconds, command understanding
    t2: int  # microseconds, pointing ray estimation
    t3: int  # microseconds, everything else through goal publication
    total: int
    phase2_invoked: bool


@dataclass(frozen=True)
class PipelineOutcome:
    goal: world.NavigationGoal | None
    instruction: Instruction
    events: tuple[UtteranceEvent, ...]
    timing: TimingRecord
    mode: str
    intersection: np.ndarray | None = None  # 2D ground point, when computed
    candidate_ids: tuple[str, ...] = ()

    @property
    def failed(self) -> bool:
        return self.goal is None


class Pipeline:
    """One scene's command pipeline; tracks how often phase 2 actually ran.

    ``clock`` must return monotonic nanoseconds; tests inject a fake clock to
    make timing deterministic.
    """

    def __init__(self, scene: world.Scene, lexicon: Lexicon | None = None,
                 registry: TemplateRegistry | None = None,
                 clock=time.perf_counter_ns,
                 pointing_threshold_deg: float = geometry.DEFAULT_MIN_POINTING_ANGLE_DEG):
        self.scene = scene
        self.lexicon = lexicon if lexicon is not None else load_lexicon()
        self.registry = registry if registry is not None else load_templates()
        self.clock = clock
        self.pointing_threshold_deg = pointing_threshold_deg
        self.phase2_invocations = 0

    def handle(self, text: str, frame: geometry.KeypointFrame | None = None,
               mode: str = MODE_VGPN,
               robot_state: nav.RobotState | None = None) -> PipelineOutcome:
        """Run one command through the pipeline and return its outcome."""
        if mode not in (MODE_VGPN, MODE_POINTING_ONLY):
            raise ValueError(f"unknown mode {mode!r}")
        robot = robot_state if robot_state is not None else self.scene.robot_start
        if mode == MODE_POINTING_ONLY:
            return self._handle_pointing_only(frame, robot)
        return self._handle_vgpn(text, frame, robot)

    # --- vgpn ---------------------------------------------------------------

    def _handle_vgpn(self, text, frame, robot) -> PipelineOutcome:
        clock = self.clock
        start = clock()
        events: list[UtteranceEvent] = []
        goal = None
        ray = None
        intersection = None
        candidate_ids: tuple[str, ...] = ()
        t2 = 0
        t3_ns = 0
        phase2 = False

        t1_start = clock()
        try:
            instruction = parse_command(text, self.lexicon, self.registry)
        except LanguageError:
            instruction = Instruction("?")
            events.append(UtteranceEvent.of(CAUSE_NOT_UNDERSTOOD))
        t1 = (clock() - t1_start) // 1000

        if not events:
            t3_start = clock()
            decision = requires_gesture(instruction, self.scene,
                                        self.lexicon.demonstratives)
            t3_ns += clock() - t3_start

            if decision.required:
                phase2 = True
                self.phase2_invocations += 1
                t2_start = clock()
                ray = self._estimate_ray(frame, events)
                t2 = (clock() - t2_start) // 1000

            if not events:
                t3_start = clock()
                goal, intersection, candidate_ids = self._decide_target(
                    instruction, ray, robot, events)
                t3_ns += clock() - t3_start

        total = (clock() - start) // 1000
        timing = TimingRecord(t1, t2, t3_ns // 1000, total, phase2)
        return PipelineOutcome(goal, instruction, tuple(events), timing,
                               MODE_VGPN, intersection, candidate_ids)

    def _estimate_ray(self, frame, events) -> geometry.Ray | None:
        """Phase 2: validate the frame and build the pointing ray."""
        if frame is None:
            events.append(UtteranceEvent.of(CAUSE_NO_PERSON))
            return None
        vertical = geometry.map_down_in_camera(self.scene.camera)
        if not geometry.detect_pointing(frame, vertical,
                                        self.pointing_threshold_deg):
            events.append(UtteranceEvent.of(CAUSE_NO_GESTURE))
            return None
        arm = geometry.select_arm(frame, vertical)
        return geometry.pointing_ray(frame, arm, self.scene.camera)

    def _decide_target(self, instruction, ray, robot, events):
        """Phase 3: intersection, candidate matching and goal decision."""
        intersection = None
        candidate_ids: tuple[str, ...] = ()
        if ray is not None:
            try:
                point = geometry.ground_intersection(ray, self.scene.ground_height)
                intersection = point[:2].copy()
            except NoGroundIntersection:
                events.append(UtteranceEvent.of(CAUSE_NO_TARGET))
                return None, None, candidate_ids

        desc = description_of(instruction)
        if desc is not None:
            candidate_ids = tuple(o.id for o in
                                  world.match_objects(self.scene, desc[0], desc[1]))

        if instruction_kind(instruction) != "navigate":
            position = nav.relative_goal_position(instruction, robot)
            return world.NavigationGoal(position, world.GOAL_RELATIVE), \
                intersection, candidate_ids
        try:
            goal = world.resolve_target(instruction, intersection, self.scene)
        except (NoSuchObject, MissingIntersection):
            events.append(UtteranceEvent.of(CAUSE_NO_TARGET))
            return None, intersection, candidate_ids
        return goal, intersection, candidate_ids

    # --- pointing-only baseline ----------------------------------------------

    def _handle_pointing_only(self, frame, robot) -> PipelineOutcome:
        clock = self.clock
        start = clock()
        events: list[UtteranceEvent] = []
        goal = None
        intersection = None
        t3_ns = 0

        # speech is only a trigger here; nothing is recognized
        t1 = 0
        self.phase2_invocations += 1
        t2_start = clock()
        ray = self._estimate_ray(frame, events)
        t2 = (clock() - t2_start) // 1000

        if ray is not None:
            t3_start = clock()
            try:
                point = geometry.ground_intersection(ray, self.scene.ground_height)
                intersection = point[:2].copy()
                goal = world.NavigationGoal(intersection.copy(),
                                            world.GOAL_INTERSECTION)
            except NoGroundIntersection:
                events.append(UtteranceEvent.of(CAUSE_NO_TARGET))
            t3_ns += clock() - t3_start

        total = (clock() - start) // 1000
        timing = TimingRecord(t1, t2, t3_ns // 1000, total, True)
        return PipelineOutcome(goal, POINTING_TRIGGER, tuple(events), timing,
                               MODE_POINTING_ONLY, intersection, ())


# --- timing summary ----------------------------------------------------------

@dataclass(frozen=True)
class TimingSummary:
    """Mean and population SD (microseconds) per timing field."""

    count: int
    mean: dict[str, float]
    sd: dict[str, float]


def timing_summary(records: list[TimingRecord]) -> TimingSummary:
    """Arithmetic mean and population standard deviation of t1/t2/t3/total."""
    from .errors import EmptyInput
    if not records:
        raise EmptyInput("no timing records")
    mean = {}
    sd = {}
    for name in ("t1", "t2", "t3", "total"):
        values = np.array([getattr(r, name) for r in records], dtype=np.float64)
        mean[name] = float(values.mean())
        sd[name] = float(values.std())
    return TimingSummary(len(records), mean, sd)


# --- document serialization ----------------------------------------------------

OUTCOME_SCHEMA_VERSION = 1


def outcome_to_doc(outcome: PipelineOutcome) -> dict:
    """JSON-ready canonical form of an outcome (stable key order via sort)."""
    goal = None
    if outcome.goal is not None:
        goal = {
            "position": [float(outcome.goal.position[0]),
                         float(outcome.goal.position[1])],
            "source": outcome.goal.source,
            "matched_object_id": outcome.goal.matched_object_id,
        }
    return {
        "schema_version": OUTCOME_SCHEMA_VERSION,
        "mode": outcome.mode,
        "instruction": {"verb": outcome.instruction.verb,
                        "args": list(outcome.instruction.args)},
        "goal": goal,
        "events": [{"text": e.text, "cause": e.cause} for e in outcome.events],
        "timing": {
            "t1_us": outcome.timing.t1,
            "t2_us": outcome.timing.t2,
            "t3_us": outcome.timing.t3,
            "total_us": outcome.timing.total,
            "phase2_invoked": outcome.timing.phase2_invoked,
        },
        "intersection": (None if outcome.intersection is None else
                         [float(outcome.intersection[0]),
                          float(outcome.intersection[1])]),
        "candidates": list(outcome.candidate_ids),
    }
