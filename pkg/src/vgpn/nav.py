"""Occupancy-grid path planning and kinematic execution.

Planning is 8-connected A* (diagonal cost sqrt(2), no corner cutting) on the
grid inflated by the robot radius; execution is a simple waypoint chaser for
a differential-drive robot with instant heading alignment per segment.
"""

from __future__ import annotations

import io
import math
from dataclasses import dataclass, field

import numpy as np

from . import kernels
from .errors import GoalOccupied, PlanningError, StartOccupied, Unreachable
from .language import Instruction, instruction_kind

DEFAULT_GOAL_TOLERANCE = 0.10
DEFAULT_MOVE_STEP = 1.0
DEFAULT_DT = 0.05


@dataclass(frozen=True)
class OccupancyGrid:
    """Row-major occupancy cells (uint8, 0 free / 1 occupied); ``origin`` is
    the map position of the low corner of cell (0, 0), x along columns and
    y along rows."""

    resolution: float
    width: int
    height: int
    origin: np.ndarray
    cells: np.ndarray

    def __post_init__(self):
        if self.resolution <= 0:
            raise ValueError("resolution must be > 0")
        cells = np.ascontiguousarray(self.cells, dtype=np.uint8)
        if cells.shape != (self.height, self.width):
            raise ValueError("cells must have shape (height, width)")
        object.__setattr__(self, "cells", cells)
        object.__setattr__(self, "origin",
                           np.asarray(self.origin, dtype=np.float64))
        object.__setattr__(self, "_inflation_cache", {})

    @classmethod
    def empty(cls, width: int, height: int, resolution: float = 0.05,
              origin=(0.0, 0.0)) -> "OccupancyGrid":
        return cls(resolution, width, height, np.asarray(origin, dtype=np.float64),
                   np.zeros((height, width), dtype=np.uint8))

    def world_to_cell(self, point) -> tuple[int, int]:
        p = np.asarray(point, dtype=np.float64)
        col = int(math.floor((p[0] - self.origin[0]) / self.resolution))
        row = int(math.floor((p[1] - self.origin[1]) / self.resolution))
        return row, col

    def cell_center(self, row: int, col: int) -> np.ndarray:
        return np.array([self.origin[0] + (col + 0.5) * self.resolution,
                         self.origin[1] + (row + 0.5) * self.resolution])

    def contains_point(self, point) -> bool:
        row, col = self.world_to_cell(point)
        return 0 <= row < self.height and 0 <= col < self.width

    def inflated(self, radius: float) -> np.ndarray:
        """Occupancy after inflating obstacles by ``radius`` meters (cached)."""
        key = round(radius / self.resolution, 9)
        cache = self._inflation_cache
        if key not in cache:
            cache[key] = kernels.inflate_occupancy(self.cells,
                                                   radius / self.resolution)
        return cache[key]


@dataclass(frozen=True)
class RobotState:
    position: np.ndarray  # 2D, meters
    heading: float        # radians, (-pi, pi]
    radius: float = 0.18
    speed: float = 0.5
    turn_rate: float = 1.5

    def __post_init__(self):
        object.__setattr__(self, "position",
                           np.asarray(self.position, dtype=np.float64))
        object.__setattr__(self, "heading", wrap_angle(self.heading))


def wrap_angle(theta: float) -> float:
    """Normalize an angle to (-pi, pi]."""
    wrapped = math.fmod(theta + math.pi, 2.0 * math.pi)
    if wrapped <= 0.0:
        wrapped += 2.0 * math.pi
    return wrapped - math.pi


@dataclass(frozen=True)
class PathPlan:
    waypoints: tuple[np.ndarray, ...]  # map meters, start cell -> goal cell
    cost: float                        # cells: straight 1, diagonal sqrt(2)
    cells: tuple[tuple[int, int], ...]


def plan_path(grid: OccupancyGrid, start, goal, robot_radius: float) -> PathPlan:
    """A* plan between two map points on the inflated grid.

    Raises StartOccupied / GoalOccupied when either endpoint cell is blocked
    after inflation, and Unreachable when no path exists.
    """
    occ = grid.inflated(robot_radius)
    start_rc = grid.world_to_cell(start)
    goal_rc = grid.world_to_cell(goal)
    for name, (row, col) in (("start", start_rc), ("goal", goal_rc)):
        if not (0 <= row < grid.height and 0 <= col < grid.width):
            raise (StartOccupied if name == "start" else GoalOccupied)(
                f"{name} cell {row, col} outside the grid")
    if occ[start_rc]:
        raise StartOccupied(f"start cell {start_rc} occupied after inflation")
    if occ[goal_rc]:
        raise GoalOccupied(f"goal cell {goal_rc} occupied after inflation")
    result = kernels.astar_search(occ, start_rc, goal_rc)
    if result is None:
        raise Unreachable(f"no path from {start_rc} to {goal_rc}")
    cost, cells = result
    waypoints = tuple(grid.cell_center(r, c) for r, c in cells)
    return PathPlan(waypoints, cost, tuple(cells))


# --- execution ---------------------------------------------------------------

@dataclass(frozen=True)
class TrajectorySample:
    t: float
    x: float
    y: float
    heading: float


@dataclass
class Trajectory:
    samples: list[TrajectorySample] = field(default_factory=list)
    collision: bool = False
    arrived: bool = False
    plan: PathPlan | None = None
    waypoint_times: list[tuple[int, float]] = field(default_factory=list)

    @property
    def final_state(self) -> TrajectorySample:
        return self.samples[-1]

    def duration(self) -> float:
        return self.samples[-1].t if self.samples else 0.0

    def to_csv(self) -> str:
        buf = io.StringIO()
        buf.write("time,x,y,heading\n")
        for s in self.samples:
            buf.write(f"{s.t:.6f},{s.x:.6f},{s.y:.6f},{s.heading:.6f}\n")
        return buf.getvalue()

    def state_at(self, t: float) -> TrajectorySample:
        """Sample at or immediately before time t (clamped to the ends)."""
        if not self.samples:
            raise ValueError("empty trajectory")
        if t <= self.samples[0].t:
            return self.samples[0]
        for sample in reversed(self.samples):
            if sample.t <= t:
                return sample
        return self.samples[-1]


def _first_arg(instr: Instruction, tag: str) -> str | None:
    for arg, t in zip(instr.args, instr.tags):
        if t == tag:
            return arg
    return None


def relative_goal_position(instr: Instruction, robot: RobotState,
                           move_step: float = DEFAULT_MOVE_STEP) -> np.ndarray:
    """Intended end position of a turn/move/stop command (no collision
    clamping; execution may stop short)."""
    if instruction_kind(instr) != "move":
        return robot.position.copy()
    direction = _first_arg(instr, "d") or "forward"
    amount = _first_arg(instr, "m")
    unit = _first_arg(instr, "q")
    distance = move_step
    if amount is not None and unit == "meter":
        distance = float(amount)
    sign = -1.0 if direction == "backward" else 1.0
    forward = np.array([math.cos(robot.heading), math.sin(robot.heading)])
    return robot.position + forward * distance * sign


def execute(instr: Instruction, goal, robot: RobotState, grid: OccupancyGrid,
            dt: float = DEFAULT_DT, *,
            goal_tolerance: float = DEFAULT_GOAL_TOLERANCE,
            move_step: float = DEFAULT_MOVE_STEP) -> Trajectory:
    """Run one instruction kinematically and return the sampled trajectory.

    goto follows a planned path at the robot's speed; turn rotates by the
    requested angle (default 90 degrees) at turn_rate; move translates along
    the heading (default 1 m, or the spoken amount in meters) stopping before
    any inflated obstacle.
    """
    kind = instruction_kind(instr)
    if kind == "navigate":
        if goal is None:
            raise PlanningError("goto execution needs a navigation goal")
        return _execute_goto(goal, robot, grid, dt, goal_tolerance)
    if kind == "turn":
        return _execute_turn(instr, robot, dt)
    if kind == "move":
        return _execute_move(instr, robot, grid, dt, move_step)
    traj = Trajectory(arrived=True)
    traj.samples.append(TrajectorySample(0.0, robot.position[0],
                                         robot.position[1], robot.heading))
    return traj


def _execute_goto(goal, robot: RobotState, grid: OccupancyGrid, dt: float,
                  goal_tolerance: float) -> Trajectory:
    goal_xy = np.asarray(goal.position, dtype=np.float64)
    plan = plan_path(grid, robot.position, goal_xy, robot.radius)
    traj = Trajectory(plan=plan)
    pos = robot.position.copy()
    heading = robot.heading
    t = 0.0
    traj.samples.append(TrajectorySample(t, pos[0], pos[1], heading))

    step = robot.speed * dt
    wp_index = 0
    waypoints = list(plan.waypoints)
    while True:
        if float(np.linalg.norm(goal_xy - pos)) <= goal_tolerance:
            traj.arrived = True
            break
        if wp_index >= len(waypoints):
            traj.arrived = float(np.linalg.norm(goal_xy - pos)) <= goal_tolerance
            break
        target = waypoints[wp_index]
        delta = target - pos
        dist = float(np.linalg.norm(delta))
        if dist < 1e-9:
            traj.waypoint_times.append((wp_index, t))
            wp_index += 1
            continue
        heading = math.atan2(delta[1], delta[0])
        advance = min(step, dist)
        pos = pos + delta / dist * advance
        t += dt
        traj.samples.append(TrajectorySample(t, pos[0], pos[1], heading))
    return traj


def _execute_turn(instr: Instruction, robot: RobotState, dt: float) -> Trajectory:
    direction = _first_arg(instr, "d") or "left"
    amount = _first_arg(instr, "m")
    degrees = float(amount) if amount is not None else 90.0
    if direction == "around":
        degrees = 180.0
    sign = -1.0 if direction == "right" else 1.0
    total = math.radians(degrees) * sign

    traj = Trajectory()
    pos = robot.position
    heading = robot.heading
    t = 0.0
    traj.samples.append(TrajectorySample(t, pos[0], pos[1], heading))
    turned = 0.0
    rate = robot.turn_rate
    while abs(total - turned) > 1e-12:
        step = math.copysign(min(rate * dt, abs(total - turned)), total)
        turned += step
        heading = wrap_angle(heading + step)
        t += dt
        traj.samples.append(TrajectorySample(t, pos[0], pos[1], heading))
    traj.arrived = True
    return traj


def _execute_move(instr: Instruction, robot: RobotState, grid: OccupancyGrid,
                  dt: float, move_step: float) -> Trajectory:
    direction = _first_arg(instr, "d") or "forward"
    amount = _first_arg(instr, "m")
    unit = _first_arg(instr, "q")
    distance = move_step
    if amount is not None and unit == "meter":
        distance = float(amount)
    sign = -1.0 if direction == "backward" else 1.0

    occ = grid.inflated(robot.radius)
    traj = Trajectory()
    pos = robot.position.copy()
    heading = robot.heading
    t = 0.0
    traj.samples.append(TrajectorySample(t, pos[0], pos[1], heading))
    step = robot.speed * dt
    forward = np.array([math.cos(heading), math.sin(heading)]) * sign
    moved = 0.0
    while moved < distance - 1e-12:
        advance = min(step, distance - moved)
        nxt = pos + forward * advance
        row, col = grid.world_to_cell(nxt)
        if not (0 <= row < grid.height and 0 <= col < grid.width) or occ[row, col]:
            traj.collision = True
            break
        pos = nxt
        moved += advance
        t += dt
        traj.samples.append(TrajectorySample(t, pos[0], pos[1], heading))
    traj.arrived = not traj.collision
    return traj
