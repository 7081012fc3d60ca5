"""Hot numeric kernels: grid inflation, 8-connected A* search, and batched
ray/ground intersection.

The loop kernels are compiled with numba's @njit when available.  Setting the
environment variable ``VGPN_NUMBA=0`` before import selects the fallback
path instead: vectorized numpy where the kernel vectorizes (inflation, batch
intersection) and the same loop code interpreted for the A* search.  The two
paths are compared by ``benchmarks/bench_kernels.py`` and checked for
agreement in the test suite.

All kernels take plain numpy arrays; grid cells are uint8 (0 free, 1
occupied) indexed as [row, col].
"""

import math
import os

import numpy as np

SQRT2 = math.sqrt(2.0)


def _jit_requested() -> bool:
    flag = os.environ.get("VGPN_NUMBA", "auto").strip().lower()
    if flag in ("0", "off", "false", "no"):
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        if flag in ("1", "on", "true", "yes"):
            raise
        return False
    return True


JIT_ENABLED = _jit_requested()

if JIT_ENABLED:
    from numba import njit as _njit

    def maybe_njit(func):
        return _njit(cache=True)(func)
else:
    def maybe_njit(func):
        return func


# 8-connected neighborhood; order is fixed so searches are deterministic.
_NEIGH_DR = np.array([-1, -1, -1, 0, 0, 1, 1, 1], dtype=np.int64)
_NEIGH_DC = np.array([-1, 0, 1, -1, 1, -1, 0, 1], dtype=np.int64)


# --- grid inflation ----------------------------------------------------------

def _inflate_loop(occ, radius_cells):
    h, w = occ.shape
    out = occ.copy()
    r = int(math.floor(radius_cells))
    r2 = radius_cells * radius_cells
    for i in range(h):
        for j in range(w):
            if occ[i, j] == 0:
                continue
            for di in range(-r, r + 1):
                ii = i + di
                if ii < 0 or ii >= h:
                    continue
                for dj in range(-r, r + 1):
                    jj = j + dj
                    if jj < 0 or jj >= w:
                        continue
                    if di * di + dj * dj <= r2:
                        out[ii, jj] = 1
    return out


def _inflate_numpy(occ, radius_cells):
    h, w = occ.shape
    out = occ.copy()
    r = int(math.floor(radius_cells))
    r2 = radius_cells * radius_cells
    for di in range(-r, r + 1):
        for dj in range(-r, r + 1):
            if di * di + dj * dj > r2:
                continue
            src = occ[max(0, -di):h - max(0, di), max(0, -dj):w - max(0, dj)]
            dst = out[max(0, di):h - max(0, -di), max(0, dj):w - max(0, -dj)]
            np.bitwise_or(dst, src, out=dst)
    return out


if JIT_ENABLED:
    _inflate_impl = maybe_njit(_inflate_loop)
else:
    _inflate_impl = _inflate_numpy


def inflate_occupancy(occ: np.ndarray, radius_cells: float) -> np.ndarray:
    """Mark every cell within ``radius_cells`` (Euclidean, in cell units) of an
    occupied cell as occupied."""
    occ = np.ascontiguousarray(occ, dtype=np.uint8)
    if radius_cells < 0:
        raise ValueError("radius_cells must be >= 0")
    return _inflate_impl(occ, float(radius_cells))


# --- A* search ---------------------------------------------------------------
#
# Costs are exact: a path's cost is straight_steps + diag_steps * sqrt(2), and
# g-scores are stored as the two integer step counts.  Comparing the float
# key a + b*sqrt(2) is an exact order on those pairs (distinct pairs with
# counts below ~1e4 differ by far more than double rounding error), so the
# returned cost is the true optimum and bit-identical across jit/fallback.

def _astar_loop(occ, sr, sc, gr, gc):
    h, w = occ.shape
    n = h * w
    sqrt2 = 2.0 ** 0.5

    gs = np.full(n, -1, dtype=np.int64)     # straight-step count, -1 unvisited
    gd = np.zeros(n, dtype=np.int64)        # diagonal-step count
    closed = np.zeros(n, dtype=np.uint8)
    parent = np.full(n, -1, dtype=np.int64)

    cap = 8 * n + 8
    heap_f = np.empty(cap, dtype=np.float64)
    heap_tb = np.empty(cap, dtype=np.int64)  # push counter, breaks f ties
    heap_node = np.empty(cap, dtype=np.int64)
    size = 0
    pushes = 0

    start = sr * w + sc
    goal = gr * w + gc
    gs[start] = 0
    gd[start] = 0

    # octile heuristic from integer deltas
    adx = abs(gr - sr)
    ady = abs(gc - sc)
    lo = min(adx, ady)
    f0 = (adx + ady - 2 * lo) + lo * sqrt2

    heap_f[0] = f0
    heap_tb[0] = 0
    heap_node[0] = start
    size = 1
    pushes = 1

    while size > 0:
        # pop-min on (f, tb)
        node = heap_node[0]
        size -= 1
        heap_f[0] = heap_f[size]
        heap_tb[0] = heap_tb[size]
        heap_node[0] = heap_node[size]
        i = 0
        while True:
            l = 2 * i + 1
            r = l + 1
            m = i
            if l < size and (heap_f[l] < heap_f[m] or
                             (heap_f[l] == heap_f[m] and heap_tb[l] < heap_tb[m])):
                m = l
            if r < size and (heap_f[r] < heap_f[m] or
                             (heap_f[r] == heap_f[m] and heap_tb[r] < heap_tb[m])):
                m = r
            if m == i:
                break
            heap_f[i], heap_f[m] = heap_f[m], heap_f[i]
            heap_tb[i], heap_tb[m] = heap_tb[m], heap_tb[i]
            heap_node[i], heap_node[m] = heap_node[m], heap_node[i]
            i = m

        if closed[node] == 1:
            continue
        closed[node] = 1
        if node == goal:
            return 0, gs[goal], gd[goal], parent

        cr = node // w
        cc = node % w
        base_s = gs[node]
        base_d = gd[node]
        for k in range(8):
            dr = _NEIGH_DR[k]
            dc = _NEIGH_DC[k]
            nr = cr + dr
            nc = cc + dc
            if nr < 0 or nr >= h or nc < 0 or nc >= w:
                continue
            if occ[nr, nc] != 0:
                continue
            diag = dr != 0 and dc != 0
            if diag:
                # no corner cutting: both orthogonal cells must be free
                if occ[cr, nc] != 0 or occ[nr, cc] != 0:
                    continue
                ns = base_s
                nd = base_d + 1
            else:
                ns = base_s + 1
                nd = base_d
            nb = nr * w + nc
            if closed[nb] == 1:
                continue
            new_g = ns + nd * sqrt2
            if gs[nb] >= 0 and new_g >= gs[nb] + gd[nb] * sqrt2:
                continue
            gs[nb] = ns
            gd[nb] = nd
            parent[nb] = node
            adx = abs(gr - nr)
            ady = abs(gc - nc)
            lo = min(adx, ady)
            f = new_g + (adx + ady - 2 * lo) + lo * sqrt2
            # sift-up push
            heap_f[size] = f
            heap_tb[size] = pushes
            heap_node[size] = nb
            pushes += 1
            i = size
            size += 1
            while i > 0:
                p = (i - 1) // 2
                if heap_f[i] < heap_f[p] or (heap_f[i] == heap_f[p] and
                                             heap_tb[i] < heap_tb[p]):
                    heap_f[i], heap_f[p] = heap_f[p], heap_f[i]
                    heap_tb[i], heap_tb[p] = heap_tb[p], heap_tb[i]
                    heap_node[i], heap_node[p] = heap_node[p], heap_node[i]
                    i = p
                else:
                    break

    return 1, -1, -1, parent


_astar_impl = maybe_njit(_astar_loop)


def astar_search(occ: np.ndarray, start_rc, goal_rc):
    """8-connected A* on an occupancy grid (0 free, 1 occupied).

    Diagonal moves cost sqrt(2) and are blocked when either adjacent
    orthogonal cell is occupied (no corner cutting).  Returns
    ``(cost, cells)`` where cells is the list of (row, col) from start to
    goal inclusive, or ``None`` when the goal is unreachable.
    """
    occ = np.ascontiguousarray(occ, dtype=np.uint8)
    sr, sc = int(start_rc[0]), int(start_rc[1])
    gr, gc = int(goal_rc[0]), int(goal_rc[1])
    status, ns, nd, parent = _astar_impl(occ, sr, sc, gr, gc)
    if status != 0:
        return None
    w = occ.shape[1]
    cells = []
    node = gr * w + gc
    while node >= 0:
        cells.append((node // w, node % w))
        node = parent[node]
    cells.reverse()
    cost = float(ns) + float(nd) * SQRT2
    return cost, cells


# --- batched ray/ground intersection -----------------------------------------

def _batch_ray_ground_loop(eyes, wrists, rot, trans, ground_h):
    n = eyes.shape[0]
    pts = np.zeros((n, 2), dtype=np.float64)
    ok = np.zeros(n, dtype=np.uint8)
    for i in range(n):
        ox = rot[0, 0] * eyes[i, 0] + rot[0, 1] * eyes[i, 1] + rot[0, 2] * eyes[i, 2] + trans[0]
        oy = rot[1, 0] * eyes[i, 0] + rot[1, 1] * eyes[i, 1] + rot[1, 2] * eyes[i, 2] + trans[1]
        oz = rot[2, 0] * eyes[i, 0] + rot[2, 1] * eyes[i, 1] + rot[2, 2] * eyes[i, 2] + trans[2]
        vx = wrists[i, 0] - eyes[i, 0]
        vy = wrists[i, 1] - eyes[i, 1]
        vz = wrists[i, 2] - eyes[i, 2]
        dx = rot[0, 0] * vx + rot[0, 1] * vy + rot[0, 2] * vz
        dy = rot[1, 0] * vx + rot[1, 1] * vy + rot[1, 2] * vz
        dz = rot[2, 0] * vx + rot[2, 1] * vy + rot[2, 2] * vz
        if dz >= -1e-9 and oz > ground_h:
            continue
        if dz == 0.0:
            continue
        t = (ground_h - oz) / dz
        if t <= 0.0:
            continue
        pts[i, 0] = ox + t * dx
        pts[i, 1] = oy + t * dy
        ok[i] = 1
    return pts, ok


def _batch_ray_ground_numpy(eyes, wrists, rot, trans, ground_h):
    origins = eyes @ rot.T + trans
    dirs = (wrists - eyes) @ rot.T
    oz = origins[:, 2]
    dz = dirs[:, 2]
    with np.errstate(divide="ignore", invalid="ignore"):
        t = (ground_h - oz) / dz
    ok = ~((dz >= -1e-9) & (oz > ground_h))
    ok &= dz != 0.0
    ok &= t > 0.0
    pts = np.zeros((eyes.shape[0], 2), dtype=np.float64)
    pts[ok, 0] = origins[ok, 0] + t[ok] * dirs[ok, 0]
    pts[ok, 1] = origins[ok, 1] + t[ok] * dirs[ok, 1]
    return pts, ok.astype(np.uint8)


if JIT_ENABLED:
    _batch_ray_ground_impl = maybe_njit(_batch_ray_ground_loop)
else:
    _batch_ray_ground_impl = _batch_ray_ground_numpy


def batch_ray_ground(eyes: np.ndarray, wrists: np.ndarray, rot: np.ndarray,
                     trans: np.ndarray, ground_h: float):
    """Intersect eye->wrist rays with the plane z = ground_h, in map frame.

    eyes/wrists are (N, 3) camera-frame points; rot/trans the camera->map
    transform.  Returns (points (N, 2), ok (N,) uint8); rows with ok == 0
    (level or upward rays, or intersections behind the eye) hold zeros.
    """
    eyes = np.ascontiguousarray(eyes, dtype=np.float64)
    wrists = np.ascontiguousarray(wrists, dtype=np.float64)
    rot = np.ascontiguousarray(rot, dtype=np.float64)
    trans = np.ascontiguousarray(trans, dtype=np.float64)
    return _batch_ray_ground_impl(eyes, wrists, rot, trans, float(ground_h))
