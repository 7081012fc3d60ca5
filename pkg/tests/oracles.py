"""Independent oracles the tests check the implementation against.

These are deliberately written from scratch (plain heapq Dijkstra, exhaustive
scans, direct formula evaluation) and must not import the code paths they
verify.
"""

import heapq
import math

import numpy as np

SQRT2 = math.sqrt(2.0)


def dijkstra_grid_cost(occ, start_rc, goal_rc):
    """Optimal 8-connected path cost on an occupancy grid, or None.

    Same cost model as the planner (straight 1, diagonal sqrt(2), diagonals
    blocked when either orthogonal neighbor is occupied); cost is tracked as
    integer step counts so the returned float is exact.
    """
    h, w = occ.shape
    sr, sc = start_rc
    gr, gc = goal_rc
    if occ[sr, sc] or occ[gr, gc]:
        return None
    best = {}
    counter = 0
    heap = [(0.0, counter, sr, sc, 0, 0)]
    while heap:
        key, _, r, c, ns, nd = heapq.heappop(heap)
        if (r, c) in best:
            continue
        best[(r, c)] = (ns, nd)
        if (r, c) == (gr, gc):
            return ns + nd * SQRT2
        for dr in (-1, 0, 1):
            for dc in (-1, 0, 1):
                if dr == 0 and dc == 0:
                    continue
                nr, nc = r + dr, c + dc
                if not (0 <= nr < h and 0 <= nc < w) or occ[nr, nc]:
                    continue
                if dr != 0 and dc != 0 and (occ[r, nc] or occ[nr, c]):
                    continue
                if (nr, nc) in best:
                    continue
                if dr != 0 and dc != 0:
                    cand = (ns, nd + 1)
                else:
                    cand = (ns + 1, nd)
                counter += 1
                heapq.heappush(heap, (cand[0] + cand[1] * SQRT2, counter,
                                      nr, nc, cand[0], cand[1]))
    return None


def nearest_by_scan(candidates, point):
    """Exhaustive nearest-candidate scan with id tie-break: the resolve
    oracle.  candidates: iterable of (id, position 2-array)."""
    best_id = None
    best_d = None
    p = np.asarray(point, dtype=np.float64)
    for cid, pos in candidates:
        d = float((pos[0] - p[0]) ** 2 + (pos[1] - p[1]) ** 2)
        if best_d is None or d < best_d or (d == best_d and cid < best_id):
            best_d = d
            best_id = cid
    return best_id


def random_rotation(rng):
    """Uniform-ish random rotation via QR with positive diagonal."""
    m = rng.normal(size=(3, 3))
    q, r = np.linalg.qr(m)
    q = q @ np.diag(np.sign(np.diag(r)))
    if np.linalg.det(q) < 0:
        q[:, 0] = -q[:, 0]
    return q


def pointing_line_point(rotation, translation, eye, wrist, t):
    """Direct parameterized form of the pointing line: transform
    eye + t * (wrist - eye) from camera to map frame in one shot."""
    p = eye + t * (wrist - eye)
    return rotation @ p + translation


def camera_frame_ground_intersection(rotation, translation, eye, wrist, ground_h):
    """Intersect the camera-frame ray with the ground plane expressed in
    camera coordinates, then map the hit into map frame.

    The map-frame plane z = ground_h pulled into camera frame is
    n . X = ground_h - t_z with n the third row of the rotation.
    """
    n = rotation[2, :]
    d = wrist - eye
    denom = float(n @ d)
    if denom == 0.0:
        return None
    s = (ground_h - translation[2] - float(n @ eye)) / denom
    if s <= 0:
        return None
    hit_cam = eye + s * d
    return rotation @ hit_cam + translation
