// World <-> canvas mapping and small grid helpers (pure functions).

import type { GridDoc, SceneDoc, Vec2 } from "./types.js";

export interface Viewport {
  scale: number;    // pixels per meter
  widthM: number;
  heightM: number;
  originX: number;  // grid origin in map meters
  originY: number;
  padPx: number;
}

export function fitViewport(scene: SceneDoc, canvasW: number, canvasH: number,
                            padPx = 12): Viewport {
  const widthM = scene.grid.width * scene.grid.resolution;
  const heightM = scene.grid.height * scene.grid.resolution;
  const scale = Math.min((canvasW - 2 * padPx) / widthM,
                         (canvasH - 2 * padPx) / heightM);
  return {
    scale,
    widthM,
    heightM,
    originX: scene.grid.origin[0],
    originY: scene.grid.origin[1],
    padPx,
  };
}

// map y points up, canvas y points down
export function worldToScreen(vp: Viewport, p: Vec2): Vec2 {
  return [
    vp.padPx + (p[0] - vp.originX) * vp.scale,
    vp.padPx + (vp.heightM - (p[1] - vp.originY)) * vp.scale,
  ];
}

export function screenToWorld(vp: Viewport, s: Vec2): Vec2 {
  return [
    vp.originX + (s[0] - vp.padPx) / vp.scale,
    vp.originY + vp.heightM - (s[1] - vp.padPx) / vp.scale,
  ];
}

export function clampToGrid(scene: SceneDoc, p: Vec2): Vec2 {
  const eps = scene.grid.resolution / 2;
  const maxX = scene.grid.origin[0] + scene.grid.width * scene.grid.resolution - eps;
  const maxY = scene.grid.origin[1] + scene.grid.height * scene.grid.resolution - eps;
  return [
    Math.min(Math.max(p[0], scene.grid.origin[0] + eps), maxX),
    Math.min(Math.max(p[1], scene.grid.origin[1] + eps), maxY),
  ];
}

export function cellOf(grid: GridDoc, p: Vec2): [number, number] {
  return [
    Math.floor((p[1] - grid.origin[1]) / grid.resolution),
    Math.floor((p[0] - grid.origin[0]) / grid.resolution),
  ];
}

/** True when a and b land in the same cell or direct neighbors. */
export function withinOneCell(grid: GridDoc, a: Vec2, b: Vec2): boolean {
  const [ra, ca] = cellOf(grid, a);
  const [rb, cb] = cellOf(grid, b);
  return Math.abs(ra - rb) <= 1 && Math.abs(ca - cb) <= 1;
}

/** Decode the occupancy into a row-major Uint8Array (1 = occupied). */
export function decodeOccupancy(grid: GridDoc): Uint8Array {
  const total = grid.width * grid.height;
  const cells = new Uint8Array(total);
  const occ = grid.occupancy;
  if (occ.encoding === "bits") {
    for (let i = 0; i < total; i++) {
      cells[i] = occ.data.charCodeAt(i) === 49 ? 1 : 0;
    }
    return cells;
  }
  let pos = 0;
  for (const [bit, count] of occ.data) {
    cells.fill(bit, pos, pos + count);
    pos += count;
  }
  return cells;
}

export function distance(a: Vec2, b: Vec2): number {
  return Math.hypot(a[0] - b[0], a[1] - b[1]);
}

export function nearestObjectId(scene: SceneDoc, p: Vec2): string | null {
  let bestId: string | null = null;
  let bestD = Infinity;
  for (const obj of scene.objects) {
    const d = distance(obj.position, p);
    if (d < bestD || (d === bestD && bestId !== null && obj.id < bestId)) {
      bestD = d;
      bestId = obj.id;
    }
  }
  return bestId;
}
