"""Pointing-direction geometry.

The pointing direction is the ray from the user's eye through the wrist of
the raised arm, mapped from camera frame to map frame by a rigid transform
and intersected with the ground plane.  Frames can also be synthesized from a
desired aim point (the simulation stand-in for a skeleton detector) and
perturbed with Gaussian keypoint noise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, replace

import numpy as np

from .errors import (
    AimTooClose,
    DegenerateArm,
    GeometryError,
    NoArmVisible,
    NoGroundIntersection,
)

ARM_RIGHT = "REW"
ARM_LEFT = "LEW"

#: keypoint names in a fixed order; perturbation draws noise in this order
KEYPOINT_NAMES = ("right_eye", "left_eye", "right_wrist", "left_wrist",
                  "neck", "mid_hip")

_ORTHO_TOL = 1e-9
EYE_HEIGHT_RATIO = 0.92
ARM_LENGTH = 0.45
MIN_AIM_DISTANCE = 0.05
DEFAULT_MIN_POINTING_ANGLE_DEG = 20.0


def _as_point(value, name: str) -> np.ndarray:
    arr = np.asarray(value, dtype=np.float64)
    if arr.shape != (3,):
        raise GeometryError(f"{name} must be a 3-vector, got shape {arr.shape}")
    if not np.all(np.isfinite(arr)):
        raise GeometryError(f"{name} must be finite")
    return arr


@dataclass(frozen=True)
class RigidTransform:
    """Rotation + translation; rotation must be orthonormal with det +1."""

    rotation: np.ndarray
    translation: np.ndarray

    def __post_init__(self):
        rot = np.asarray(self.rotation, dtype=np.float64)
        tr = np.asarray(self.translation, dtype=np.float64)
        if rot.shape != (3, 3) or tr.shape != (3,):
            raise GeometryError("transform needs a 3x3 rotation and 3-vector translation")
        if not np.allclose(rot.T @ rot, np.eye(3), atol=_ORTHO_TOL):
            raise GeometryError("rotation is not orthonormal")
        if abs(np.linalg.det(rot) - 1.0) > _ORTHO_TOL:
            raise GeometryError("rotation must have determinant +1")
        object.__setattr__(self, "rotation", rot)
        object.__setattr__(self, "translation", tr)

    @classmethod
    def identity(cls) -> "RigidTransform":
        return cls(np.eye(3), np.zeros(3))

    @classmethod
    def from_quaternion(cls, quat, translation) -> "RigidTransform":
        """Build from a (w, x, y, z) quaternion; normalized internally."""
        w, x, y, z = (float(v) for v in quat)
        n = math.sqrt(w * w + x * x + y * y + z * z)
        if n < 1e-12:
            raise GeometryError("zero quaternion")
        w, x, y, z = w / n, x / n, y / n, z / n
        rot = np.array([
            [1 - 2 * (y * y + z * z), 2 * (x * y - z * w), 2 * (x * z + y * w)],
            [2 * (x * y + z * w), 1 - 2 * (x * x + z * z), 2 * (y * z - x * w)],
            [2 * (x * z - y * w), 2 * (y * z + x * w), 1 - 2 * (x * x + y * y)],
        ])
        return cls(rot, np.asarray(translation, dtype=np.float64))

    def apply(self, point) -> np.ndarray:
        p = np.asarray(point, dtype=np.float64)
        return p @ self.rotation.T + self.translation

    def rotate(self, vector) -> np.ndarray:
        return np.asarray(vector, dtype=np.float64) @ self.rotation.T

    def inverse(self) -> "RigidTransform":
        rot_t = self.rotation.T.copy()
        return RigidTransform(rot_t, -(rot_t @ self.translation))


@dataclass(frozen=True)
class KeypointFrame:
    """Named 3D body keypoints in camera frame; absent points are None.

    Whenever an arm point is present the neck and mid-hip must be present
    too (they anchor the body in view).
    """

    right_eye: np.ndarray | None = None
    left_eye: np.ndarray | None = None
    right_wrist: np.ndarray | None = None
    left_wrist: np.ndarray | None = None
    neck: np.ndarray | None = None
    mid_hip: np.ndarray | None = None

    def __post_init__(self):
        for name in KEYPOINT_NAMES:
            value = getattr(self, name)
            if value is not None:
                object.__setattr__(self, name, _as_point(value, name))
        arm_present = any(getattr(self, n) is not None for n in
                          ("right_eye", "left_eye", "right_wrist", "left_wrist"))
        if arm_present and (self.neck is None or self.mid_hip is None):
            raise GeometryError("neck and mid_hip required when an arm point is present")

    def arm_points(self, arm: str) -> tuple[np.ndarray, np.ndarray] | None:
        """(eye, wrist) for the requested arm, or None if either is absent."""
        eye = self.right_eye if arm == ARM_RIGHT else self.left_eye
        wrist = self.right_wrist if arm == ARM_RIGHT else self.left_wrist
        if eye is None or wrist is None:
            return None
        return eye, wrist


@dataclass(frozen=True)
class Ray:
    """origin + t * direction, t >= 0, in map frame; direction is unit."""

    origin: np.ndarray
    direction: np.ndarray

    def __post_init__(self):
        origin = _as_point(self.origin, "origin")
        direction = _as_point(self.direction, "direction")
        if abs(np.linalg.norm(direction) - 1.0) > _ORTHO_TOL:
            raise GeometryError("ray direction must be unit length")
        object.__setattr__(self, "origin", origin)
        object.__setattr__(self, "direction", direction)

    def at(self, t: float) -> np.ndarray:
        return self.origin + t * self.direction


def map_down_in_camera(transform: RigidTransform) -> np.ndarray:
    """The map-frame down axis (-z) expressed in camera frame: the vertical
    reference for arm selection, valid under arbitrary camera tilt."""
    return transform.rotation.T @ np.array([0.0, 0.0, -1.0])


def _angle_to(eye: np.ndarray, wrist: np.ndarray, vertical: np.ndarray) -> float:
    v = wrist - eye
    n = np.linalg.norm(v)
    if n < 1e-12:
        return 0.0
    v = v / n
    u = vertical / np.linalg.norm(vertical)
    return math.atan2(np.linalg.norm(np.cross(v, u)), float(np.dot(v, u)))


def select_arm(frame: KeypointFrame, vertical: np.ndarray) -> str:
    """Pick the pointing arm: the eye->wrist vector making the larger angle
    with the body vertical; ties go to the right arm."""
    right = frame.arm_points(ARM_RIGHT)
    left = frame.arm_points(ARM_LEFT)
    if right is None and left is None:
        raise NoArmVisible("neither eye/wrist pair is visible")
    if left is None:
        return ARM_RIGHT
    if right is None:
        return ARM_LEFT
    angle_r = _angle_to(*right, vertical)
    angle_l = _angle_to(*left, vertical)
    return ARM_RIGHT if angle_r >= angle_l else ARM_LEFT


def detect_pointing(frame: KeypointFrame, vertical: np.ndarray,
                    min_angle_deg: float = DEFAULT_MIN_POINTING_ANGLE_DEG) -> bool:
    """True when the selected arm is raised at least ``min_angle_deg`` away
    from the body vertical (inclusive)."""
    arm = select_arm(frame, vertical)
    eye, wrist = frame.arm_points(arm)
    return math.degrees(_angle_to(eye, wrist, vertical)) >= min_angle_deg


def pointing_ray(frame: KeypointFrame, arm: str, transform: RigidTransform) -> Ray:
    """The map-frame pointing ray through the arm's eye and wrist."""
    points = frame.arm_points(arm)
    if points is None:
        raise NoArmVisible(f"{arm} eye/wrist pair is not visible")
    eye, wrist = points
    delta = wrist - eye
    length = np.linalg.norm(delta)
    if length < 1e-6:
        raise DegenerateArm("wrist coincides with eye")
    origin = transform.apply(eye)
    direction = transform.rotate(delta)
    return Ray(origin, direction / np.linalg.norm(direction))


def ground_intersection(ray: Ray, ground_height: float = 0.0) -> np.ndarray:
    """Where the ray meets the plane z = ground_height (t > 0 required)."""
    oz = float(ray.origin[2])
    dz = float(ray.direction[2])
    if dz >= -1e-9 and oz > ground_height:
        raise NoGroundIntersection("ray points level or upward above the ground")
    if dz == 0.0:
        raise NoGroundIntersection("ray parallel to the ground")
    t = (ground_height - oz) / dz
    if t <= 0.0:
        raise NoGroundIntersection("ground intersection behind the ray origin")
    return ray.at(t)


def synthesize_frame(user_position, user_height: float, aim_point,
                     arm: str = ARM_RIGHT,
                     transform_inverse: RigidTransform | None = None,
                     ground_height: float = 0.0) -> KeypointFrame:
    """Build a camera-frame keypoint frame of a user pointing at a ground
    point, such that pointing_ray + ground_intersection recovers the aim.

    The eye sits at 0.92 * user_height above the ground at the user's
    position; the pointing wrist sits 0.45 m from the eye along the eye->aim
    line.  The other arm hangs straight down so arm selection picks the
    pointing arm.  ``transform_inverse`` is the map->camera transform (the
    inverse of the scene's camera->map transform).
    """
    user_position = np.asarray(user_position, dtype=np.float64)
    aim_point = np.asarray(aim_point, dtype=np.float64)
    if transform_inverse is None:
        transform_inverse = RigidTransform.identity()
    horiz = aim_point - user_position
    if np.linalg.norm(horiz) < MIN_AIM_DISTANCE:
        raise AimTooClose("aim point is on top of the user")

    eye = np.array([user_position[0], user_position[1],
                    ground_height + EYE_HEIGHT_RATIO * user_height])
    aim3 = np.array([aim_point[0], aim_point[1], ground_height])
    direction = aim3 - eye
    direction = direction / np.linalg.norm(direction)
    wrist = eye + ARM_LENGTH * direction

    lateral3 = np.array([-horiz[1], horiz[0], 0.0])
    lateral3 = lateral3 / np.linalg.norm(lateral3)
    other_eye = eye + 0.12 * lateral3 * (1.0 if arm == ARM_RIGHT else -1.0)
    other_wrist = other_eye + np.array([0.0, 0.0, -0.55])
    neck = np.array([user_position[0], user_position[1],
                     ground_height + 0.85 * user_height])
    mid_hip = np.array([user_position[0], user_position[1],
                        ground_height + 0.52 * user_height])

    to_cam = transform_inverse.apply
    if arm == ARM_RIGHT:
        return KeypointFrame(right_eye=to_cam(eye), right_wrist=to_cam(wrist),
                             left_eye=to_cam(other_eye), left_wrist=to_cam(other_wrist),
                             neck=to_cam(neck), mid_hip=to_cam(mid_hip))
    return KeypointFrame(left_eye=to_cam(eye), left_wrist=to_cam(wrist),
                         right_eye=to_cam(other_eye), right_wrist=to_cam(other_wrist),
                         neck=to_cam(neck), mid_hip=to_cam(mid_hip))


def perturb_frame(frame: KeypointFrame, sigma: float,
                  seed: int | np.random.Generator) -> KeypointFrame:
    """Add independent zero-mean Gaussian noise (per axis, camera frame) to
    every present keypoint; deterministic for a fixed seed."""
    if sigma < 0:
        raise GeometryError("sigma must be >= 0")
    rng = seed if isinstance(seed, np.random.Generator) else np.random.default_rng(seed)
    updates = {}
    for name in KEYPOINT_NAMES:
        value = getattr(frame, name)
        if value is None:
            continue
        updates[name] = value + rng.normal(0.0, sigma, 3)
    return replace(frame, **updates)
