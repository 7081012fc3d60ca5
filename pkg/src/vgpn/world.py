"""Annotated scene model and voice-guided target resolution.

A scene is a ground plane, a set of annotated objects (category, property
tags, position), an occupancy grid, the camera->map transform, the user, and
the robot start pose.  Target resolution follows the voice-guidance rule:
described + unique wins outright, described + ambiguous picks the candidate
nearest the pointing intersection, undescribed falls back to the
intersection itself.

Scene files are JSON; the exact schema lives in docs/scene_format.md.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

import numpy as np

from .errors import MissingIntersection, NoSuchObject, SceneInvalid
from .geometry import RigidTransform
from .language import Instruction, description_of
from .nav import OccupancyGrid, RobotState

SCENE_SCHEMA_VERSION = 1

GOAL_OBJECT = "object-match"
GOAL_INTERSECTION = "intersection"
GOAL_RELATIVE = "relative"


@dataclass(frozen=True)
class SceneObject:
    id: str
    category: str
    properties: frozenset[str]
    position: np.ndarray  # 2D, meters
    footprint_radius: float = 0.25


@dataclass(frozen=True)
class UserModel:
    position: np.ndarray  # 2D, meters
    height: float


@dataclass(frozen=True)
class Scene:
    objects: tuple[SceneObject, ...]
    grid: OccupancyGrid
    ground_height: float
    camera: RigidTransform
    user: UserModel
    robot_start: RobotState

    def object_by_id(self, object_id: str) -> SceneObject | None:
        for obj in self.objects:
            if obj.id == object_id:
                return obj
        return None


@dataclass(frozen=True)
class NavigationGoal:
    """Where the robot should drive and why.

    source is "object-match" (goal stands off a matched object, and
    matched_object_id is set), "intersection" (goal is the raw pointing
    intersection), or "relative" (goal derived from the robot's own pose,
    for turn/move commands).
    """

    position: np.ndarray  # 2D, meters
    source: str
    matched_object_id: str | None = None

    def __post_init__(self):
        if (self.source == GOAL_OBJECT) != (self.matched_object_id is not None):
            raise ValueError("matched_object_id set iff source is object-match")


# --- matching ----------------------------------------------------------------

def match_objects(scene: Scene, category: str, properties=frozenset()) -> list[SceneObject]:
    """Objects of the category carrying every requested property tag,
    ordered by id."""
    wanted = frozenset(properties)
    hits = [obj for obj in scene.objects
            if obj.category == category and wanted <= obj.properties]
    return sorted(hits, key=lambda o: o.id)


def is_unique(scene: Scene, category: str, properties=frozenset()) -> bool:
    return len(match_objects(scene, category, properties)) == 1


def nearest_object(scene: Scene, point) -> SceneObject | None:
    """Nearest annotated object to a 2D map point (ties by id)."""
    if not scene.objects:
        return None
    p = np.asarray(point, dtype=np.float64)[:2]
    return min(scene.objects,
               key=lambda o: (float(np.sum((o.position - p) ** 2)), o.id))


def standoff_point(obj: SceneObject, scene: Scene) -> np.ndarray:
    """A reachable goal beside an object: offset from its center by
    footprint_radius + robot radius, toward the robot start."""
    toward = scene.robot_start.position - obj.position
    norm = float(np.linalg.norm(toward))
    direction = toward / norm if norm > 1e-9 else np.array([1.0, 0.0])
    return obj.position + (obj.footprint_radius + scene.robot_start.radius) * direction


def resolve_target(instr: Instruction, intersection, scene: Scene) -> NavigationGoal:
    """Decide the navigation target from the instruction and the pointing
    intersection point.

    No object description: the goal is the intersection itself.  Described
    and unique: that object, regardless of the intersection.  Described and
    ambiguous: the candidate with the smallest planar distance to the
    intersection (ties by id).  Object goals stand off the object center.
    """
    desc = description_of(instr)
    if desc is None:
        if intersection is None:
            raise MissingIntersection("instruction has no object description")
        p = np.asarray(intersection, dtype=np.float64)
        return NavigationGoal(p[:2].copy(), GOAL_INTERSECTION)
    category, properties = desc
    candidates = match_objects(scene, category, properties)
    if not candidates:
        raise NoSuchObject(category, properties)
    if len(candidates) == 1:
        chosen = candidates[0]
    else:
        if intersection is None:
            raise MissingIntersection("ambiguous description needs a pointing intersection")
        p = np.asarray(intersection, dtype=np.float64)[:2]
        chosen = min(candidates,
                     key=lambda o: (float(np.sum((o.position - p) ** 2)), o.id))
    return NavigationGoal(standoff_point(chosen, scene), GOAL_OBJECT, chosen.id)


# --- scene file --------------------------------------------------------------

def _require(doc: dict, key: str, where: str):
    if key not in doc:
        raise SceneInvalid(where, f"missing key {key!r}")
    return doc[key]


def _as_floats(value, count: int, where: str) -> np.ndarray:
    try:
        arr = np.asarray(value, dtype=np.float64)
    except (TypeError, ValueError):
        raise SceneInvalid(where, "expected a list of numbers") from None
    if arr.shape != (count,):
        raise SceneInvalid(where, f"expected {count} numbers")
    if not np.all(np.isfinite(arr)):
        raise SceneInvalid(where, "values must be finite")
    return arr


def _parse_camera(doc, where: str) -> RigidTransform:
    if not isinstance(doc, dict):
        raise SceneInvalid(where, "expected an object")
    translation = _as_floats(_require(doc, "translation", where), 3,
                             f"{where}.translation")
    try:
        if "quaternion" in doc:
            quat = _as_floats(doc["quaternion"], 4, f"{where}.quaternion")
            return RigidTransform.from_quaternion(quat, translation)
        rows = _require(doc, "rotation", where)
        rot = np.asarray(rows, dtype=np.float64)
        if rot.shape != (3, 3):
            raise SceneInvalid(f"{where}.rotation", "expected 3 rows of 3 numbers")
        return RigidTransform(rot, translation)
    except SceneInvalid:
        raise
    except Exception as exc:
        raise SceneInvalid(where, str(exc)) from None


def _parse_grid(doc, where: str) -> OccupancyGrid:
    if not isinstance(doc, dict):
        raise SceneInvalid(where, "expected an object")
    resolution = float(_require(doc, "resolution", where))
    if resolution <= 0:
        raise SceneInvalid(f"{where}.resolution", "must be > 0")
    width = int(_require(doc, "width", where))
    height = int(_require(doc, "height", where))
    if width <= 0 or height <= 0:
        raise SceneInvalid(where, "width and height must be > 0")
    origin = _as_floats(_require(doc, "origin", where), 2, f"{where}.origin")
    occ_doc = _require(doc, "occupancy", where)
    encoding = _require(occ_doc, "encoding", f"{where}.occupancy")
    data = _require(occ_doc, "data", f"{where}.occupancy")
    n = width * height
    if encoding == "bits":
        if not isinstance(data, str) or len(data) != n:
            raise SceneInvalid(f"{where}.occupancy.data",
                               f"bits string must have length {n}")
        if set(data) - {"0", "1"}:
            raise SceneInvalid(f"{where}.occupancy.data", "bits must be 0 or 1")
        cells = np.frombuffer(data.encode("ascii"), dtype=np.uint8) - ord("0")
    elif encoding == "rle":
        runs = []
        total = 0
        for i, pair in enumerate(data):
            if (not isinstance(pair, list)) or len(pair) != 2:
                raise SceneInvalid(f"{where}.occupancy.data[{i}]",
                                   "expected [bit, count]")
            bit, count = pair
            if bit not in (0, 1) or not isinstance(count, int) or count <= 0:
                raise SceneInvalid(f"{where}.occupancy.data[{i}]",
                                   "expected bit 0/1 and positive count")
            runs.append((bit, count))
            total += count
        if total != n:
            raise SceneInvalid(f"{where}.occupancy.data",
                               f"run lengths sum to {total}, expected {n}")
        cells = np.empty(n, dtype=np.uint8)
        pos = 0
        for bit, count in runs:
            cells[pos:pos + count] = bit
            pos += count
    else:
        raise SceneInvalid(f"{where}.occupancy.encoding",
                           f"unknown encoding {encoding!r}")
    return OccupancyGrid(resolution, width, height, origin,
                         cells.reshape(height, width).astype(np.uint8))


def scene_from_doc(doc: dict) -> Scene:
    """Validate and build a Scene from a parsed scene document."""
    if not isinstance(doc, dict):
        raise SceneInvalid("$", "scene document must be an object")
    version = doc.get("schema_version", SCENE_SCHEMA_VERSION)
    if version != SCENE_SCHEMA_VERSION:
        raise SceneInvalid("$.schema_version", f"unsupported version {version!r}")
    ground = float(doc.get("ground_height", 0.0))
    camera = _parse_camera(_require(doc, "camera", "$"), "$.camera")
    grid = _parse_grid(_require(doc, "grid", "$"), "$.grid")

    user_doc = _require(doc, "user", "$")
    user = UserModel(
        position=_as_floats(_require(user_doc, "position", "$.user"), 2,
                            "$.user.position"),
        height=float(_require(user_doc, "height", "$.user")),
    )
    if user.height <= 0:
        raise SceneInvalid("$.user.height", "must be > 0")

    rs_doc = _require(doc, "robot_start", "$")
    robot = RobotState(
        position=_as_floats(_require(rs_doc, "position", "$.robot_start"), 2,
                            "$.robot_start.position"),
        heading=float(rs_doc.get("heading", 0.0)),
        radius=float(rs_doc.get("radius", 0.18)),
        speed=float(rs_doc.get("speed", 0.5)),
        turn_rate=float(rs_doc.get("turn_rate", 1.5)),
    )
    if robot.radius <= 0:
        raise SceneInvalid("$.robot_start.radius", "must be > 0")

    objects = []
    ids = set()
    for i, obj_doc in enumerate(_require(doc, "objects", "$")):
        where = f"$.objects[{i}]"
        oid = _require(obj_doc, "id", where)
        if not isinstance(oid, str) or not oid:
            raise SceneInvalid(f"{where}.id", "must be a nonempty string")
        if oid in ids:
            raise SceneInvalid(f"{where}.id", f"duplicate id {oid!r}")
        ids.add(oid)
        category = _require(obj_doc, "category", where)
        position = _as_floats(_require(obj_doc, "position", where), 2,
                              f"{where}.position")
        if not grid.contains_point(position):
            raise SceneInvalid(f"{where}.position", "outside the grid bounds")
        footprint = float(obj_doc.get("footprint_radius", 0.25))
        if footprint < 0:
            raise SceneInvalid(f"{where}.footprint_radius", "must be >= 0")
        props = obj_doc.get("properties", [])
        if not isinstance(props, list) or not all(isinstance(p, str) for p in props):
            raise SceneInvalid(f"{where}.properties", "must be a list of strings")
        objects.append(SceneObject(oid, category, frozenset(props),
                                   position, footprint))

    if not grid.contains_point(user.position):
        raise SceneInvalid("$.user.position", "outside the grid bounds")
    if not grid.contains_point(robot.position):
        raise SceneInvalid("$.robot_start.position", "outside the grid bounds")
    occ = grid.inflated(robot.radius)
    row, col = grid.world_to_cell(robot.position)
    if occ[row, col]:
        raise SceneInvalid("$.robot_start.position",
                           "not in free space after inflation by the robot radius")

    return Scene(tuple(objects), grid, ground, camera, user, robot)


def load_scene(path: str) -> Scene:
    with open(path, encoding="utf-8") as fh:
        try:
            doc = json.load(fh)
        except json.JSONDecodeError as exc:
            raise SceneInvalid("$", f"invalid JSON: {exc}") from None
    return scene_from_doc(doc)
