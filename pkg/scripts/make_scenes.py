#!/usr/bin/env python3
"""Regenerate the packaged preset scenes (src/vgpn/data/scenes/*.json).

Grids are rasterized here from wall rectangles and stored run-length encoded.
Run from the repo root:  python scripts/make_scenes.py
"""

import json
import math
import os

import numpy as np

OUT_DIR = os.path.join(os.path.dirname(__file__), "..", "src", "vgpn",
                       "data", "scenes")


def make_grid(width_m, height_m, resolution, walls):
    """walls: list of (x0, y0, x1, y1) occupied rectangles in meters."""
    w = round(width_m / resolution)
    h = round(height_m / resolution)
    occ = np.zeros((h, w), dtype=np.uint8)
    for x0, y0, x1, y1 in walls:
        c0 = max(0, int(math.floor(x0 / resolution)))
        c1 = min(w, int(math.ceil(x1 / resolution)))
        r0 = max(0, int(math.floor(y0 / resolution)))
        r1 = min(h, int(math.ceil(y1 / resolution)))
        occ[r0:r1, c0:c1] = 1
    return occ, w, h


def rle(occ):
    flat = occ.flatten()
    runs = []
    value = int(flat[0])
    count = 0
    for cell in flat:
        if int(cell) == value:
            count += 1
        else:
            runs.append([value, count])
            value = int(cell)
            count = 1
    runs.append([value, count])
    return runs


def border(width_m, height_m, thickness=0.1):
    return [
        (0, 0, width_m, thickness),
        (0, height_m - thickness, width_m, height_m),
        (0, 0, thickness, height_m),
        (width_m - thickness, 0, width_m, height_m),
    ]


def quat_yaw_pitch(yaw_deg, pitch_deg):
    """Quaternion (w,x,y,z) for Rz(yaw) @ Ry(pitch)."""
    cy, sy = math.cos(math.radians(yaw_deg) / 2), math.sin(math.radians(yaw_deg) / 2)
    cp, sp = math.cos(math.radians(pitch_deg) / 2), math.sin(math.radians(pitch_deg) / 2)
    # qz * qy
    return [cy * cp, -sy * sp, cy * sp, sy * cp]


def rows_yaw(yaw_deg):
    c, s = math.cos(math.radians(yaw_deg)), math.sin(math.radians(yaw_deg))
    return [[c, -s, 0.0], [s, c, 0.0], [0.0, 0.0, 1.0]]


def scene_doc(width_m, height_m, resolution, walls, camera, user, robot_start,
              objects):
    occ, w, h = make_grid(width_m, height_m, resolution, walls)
    return {
        "schema_version": 1,
        "ground_height": 0.0,
        "camera": camera,
        "user": user,
        "robot_start": robot_start,
        "objects": objects,
        "grid": {
            "resolution": resolution,
            "width": w,
            "height": h,
            "origin": [0.0, 0.0],
            "occupancy": {"encoding": "rle", "data": rle(occ)},
        },
    }


def obj(oid, category, position, footprint_radius=0.25, properties=()):
    return {"id": oid, "category": category, "position": list(position),
            "footprint_radius": footprint_radius,
            "properties": list(properties)}


def build_unique_door():
    walls = border(6.0, 6.0) + [
        (2.95, 0.1, 3.05, 1.8),   # interior wall stub
    ]
    camera = {"quaternion": quat_yaw_pitch(20.0, -10.0),
              "translation": [0.3, 3.0, 0.6]}
    return scene_doc(
        6.0, 6.0, 0.05, walls, camera,
        {"position": [1.0, 3.0], "height": 1.75},
        {"position": [1.0, 2.0], "heading": 0.0, "radius": 0.18,
         "speed": 0.5, "turn_rate": 1.5},
        [
            obj("door1", "door", [5.5, 3.0], 0.15),
            obj("chair1", "chair", [2.0, 1.5], 0.22),
            obj("chair2", "chair", [2.0, 4.5], 0.22),
            obj("chair3", "chair", [3.5, 3.0], 0.22, ["black"]),
            obj("bed1", "bed", [4.0, 1.2], 0.40),
        ])


def build_diff_pair():
    walls = border(6.0, 4.0)
    camera = {"rotation": rows_yaw(35.0), "translation": [0.5, 0.5, 0.55]}
    return scene_doc(
        6.0, 4.0, 0.05, walls, camera,
        {"position": [1.0, 2.0], "height": 1.75},
        {"position": [0.8, 0.8], "heading": 0.0, "radius": 0.18,
         "speed": 0.5, "turn_rate": 1.5},
        [
            obj("chair1", "chair", [3.0, 2.1], 0.22),
            obj("bed1", "bed", [3.0, 1.9], 0.30),
        ])


def build_same_pair():
    walls = border(6.0, 4.0)
    camera = {"rotation": rows_yaw(-25.0), "translation": [0.5, 3.5, 0.55]}
    return scene_doc(
        6.0, 4.0, 0.05, walls, camera,
        {"position": [1.0, 2.0], "height": 1.75},
        {"position": [0.8, 0.8], "heading": 0.0, "radius": 0.18,
         "speed": 0.5, "turn_rate": 1.5},
        [
            obj("chair_a", "chair", [3.0, 2.1], 0.22),
            obj("chair_b", "chair", [3.0, 1.9], 0.22),
            obj("bed1", "bed", [3.0, 2.55], 0.30),
        ])


def build_accuracy_room():
    walls = border(7.0, 6.0)
    camera = {"quaternion": quat_yaw_pitch(-30.0, -5.0),
              "translation": [0.4, 0.6, 0.58]}
    return scene_doc(
        7.0, 6.0, 0.05, walls, camera,
        {"position": [1.0, 3.0], "height": 1.75},
        {"position": [1.0, 1.5], "heading": 0.0, "radius": 0.18,
         "speed": 0.5, "turn_rate": 1.5},
        [
            obj("table1", "table", [5.5, 5.0], 0.45),
            obj("chair1", "chair", [5.8, 4.2], 0.22),
        ])


def build_playground():
    walls = border(8.0, 6.0) + [
        (3.95, 0.1, 4.05, 2.0),
        (3.95, 4.0, 4.05, 5.9),
        (6.0, 2.95, 7.9, 3.05),
    ]
    camera = {"quaternion": quat_yaw_pitch(10.0, -8.0),
              "translation": [0.4, 3.0, 0.6]}
    return scene_doc(
        8.0, 6.0, 0.05, walls, camera,
        {"position": [1.5, 3.0], "height": 1.75},
        {"position": [1.5, 2.0], "heading": 0.0, "radius": 0.18,
         "speed": 0.6, "turn_rate": 1.5},
        [
            obj("door1", "door", [7.5, 4.5], 0.15),
            obj("chair1", "chair", [2.5, 1.2], 0.22),
            obj("chair2", "chair", [2.5, 4.8], 0.22),
            obj("chair3", "chair", [5.0, 1.5], 0.22, ["black"]),
            obj("bed1", "bed", [6.5, 1.2], 0.40),
            obj("table1", "table", [5.0, 4.5], 0.45),
            obj("sofa1", "sofa", [2.0, 3.0], 0.40, ["red"]),
        ])


def main():
    scenes = {
        "unique_door.json": build_unique_door(),
        "diff_pair.json": build_diff_pair(),
        "same_pair.json": build_same_pair(),
        "accuracy_room.json": build_accuracy_room(),
        "playground.json": build_playground(),
    }
    os.makedirs(OUT_DIR, exist_ok=True)
    for name, doc in scenes.items():
        path = os.path.join(OUT_DIR, name)
        with open(path, "w", encoding="utf-8") as fh:
            json.dump(doc, fh, separators=(",", ":"))
            fh.write("\n")
        print(f"wrote {path}")


if __name__ == "__main__":
    main()
