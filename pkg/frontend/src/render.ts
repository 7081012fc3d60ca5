// Canvas rendering of the scene and overlay.  Pure drawing: every decision
// element comes from the ViewState, which only mirrors service payloads.

import { decodeOccupancy, fitViewport, Viewport, worldToScreen } from "./geom.js";
import type { ViewState } from "./state.js";
import type { SceneDoc, Vec2 } from "./types.js";

const COLORS = {
  background: "#11151c",
  freeCell: "#1b212c",
  wall: "#4a5568",
  objectFill: "#2d3a4f",
  objectEdge: "#8aa1c0",
  candidate: "#ffd166",
  matched: "#06d6a0",
  user: "#4cc9f0",
  aim: "#f72585",
  ray: "#f72585",
  intersection: "#f72585",
  goal: "#06d6a0",
  path: "#4895ef",
  robot: "#e9ecef",
  label: "#aeb8c6",
};

export class SceneRenderer {
  private viewport: Viewport | null = null;
  private gridLayer: HTMLCanvasElement | null = null;

  constructor(private readonly canvas: HTMLCanvasElement) {}

  get vp(): Viewport | null {
    return this.viewport;
  }

  /** Rasterize the static grid once per scene. */
  prepare(scene: SceneDoc): void {
    this.viewport = fitViewport(scene, this.canvas.width, this.canvas.height);
    const layer = document.createElement("canvas");
    layer.width = this.canvas.width;
    layer.height = this.canvas.height;
    const ctx = layer.getContext("2d")!;
    ctx.fillStyle = COLORS.background;
    ctx.fillRect(0, 0, layer.width, layer.height);
    const vp = this.viewport;
    const res = scene.grid.resolution;
    ctx.fillStyle = COLORS.freeCell;
    const [x0, y0] = worldToScreen(vp, [scene.grid.origin[0],
                                        scene.grid.origin[1] + vp.heightM]);
    ctx.fillRect(x0, y0, vp.widthM * vp.scale, vp.heightM * vp.scale);
    const cells = decodeOccupancy(scene.grid);
    ctx.fillStyle = COLORS.wall;
    const cellPx = res * vp.scale;
    for (let row = 0; row < scene.grid.height; row++) {
      for (let col = 0; col < scene.grid.width; col++) {
        if (!cells[row * scene.grid.width + col]) continue;
        const [sx, sy] = worldToScreen(vp, [
          scene.grid.origin[0] + col * res,
          scene.grid.origin[1] + (row + 1) * res,
        ]);
        ctx.fillRect(sx, sy, cellPx + 0.5, cellPx + 0.5);
      }
    }
    this.gridLayer = layer;
  }

  draw(view: ViewState): void {
    const ctx = this.canvas.getContext("2d")!;
    ctx.clearRect(0, 0, this.canvas.width, this.canvas.height);
    if (!view.scene || !this.viewport || !this.gridLayer) {
      ctx.fillStyle = COLORS.background;
      ctx.fillRect(0, 0, this.canvas.width, this.canvas.height);
      ctx.fillStyle = COLORS.label;
      ctx.font = "14px sans-serif";
      ctx.fillText("no session — pick a preset and connect", 20, 30);
      return;
    }
    ctx.drawImage(this.gridLayer, 0, 0);
    const vp = this.viewport;
    const scene = view.scene;

    // objects with category/property labels
    for (const obj of scene.objects) {
      const [sx, sy] = worldToScreen(vp, obj.position);
      const r = Math.max(4, obj.footprint_radius * vp.scale);
      const isCandidate = view.overlay.candidates.includes(obj.id);
      const isMatched = view.overlay.goal?.matched_object_id === obj.id;
      ctx.beginPath();
      ctx.arc(sx, sy, r, 0, Math.PI * 2);
      ctx.fillStyle = COLORS.objectFill;
      ctx.fill();
      ctx.lineWidth = isMatched ? 3 : isCandidate ? 2.5 : 1.2;
      ctx.strokeStyle = isMatched ? COLORS.matched
        : isCandidate ? COLORS.candidate : COLORS.objectEdge;
      ctx.stroke();
      ctx.fillStyle = COLORS.label;
      ctx.font = "11px sans-serif";
      const props = obj.properties.length ? ` [${obj.properties.join(",")}]` : "";
      ctx.fillText(`${obj.category}${props}`, sx + r + 3, sy - 2);
      ctx.fillText(obj.id, sx + r + 3, sy + 10);
    }

    // planned path
    if (view.overlay.path && view.overlay.path.length > 1) {
      ctx.beginPath();
      ctx.strokeStyle = COLORS.path;
      ctx.lineWidth = 2;
      view.overlay.path.forEach((wp, i) => {
        const [sx, sy] = worldToScreen(vp, wp);
        if (i === 0) ctx.moveTo(sx, sy);
        else ctx.lineTo(sx, sy);
      });
      ctx.stroke();
    }

    // pointing ray: avatar -> intersection (service result) or aim (intent)
    const rayEnd = view.overlay.intersection ?? view.overlay.aim;
    if (rayEnd) {
      const [ux, uy] = worldToScreen(vp, scene.user.position);
      const [ex, ey] = worldToScreen(vp, rayEnd);
      ctx.beginPath();
      ctx.setLineDash(view.overlay.intersection ? [] : [6, 4]);
      ctx.strokeStyle = COLORS.ray;
      ctx.lineWidth = 1.5;
      ctx.moveTo(ux, uy);
      ctx.lineTo(ex, ey);
      ctx.stroke();
      ctx.setLineDash([]);
    }
    if (view.overlay.aim) {
      this.marker(ctx, vp, view.overlay.aim, COLORS.aim, 4, false);
    }
    if (view.overlay.intersection) {
      this.cross(ctx, vp, view.overlay.intersection, COLORS.intersection, 7);
    }
    if (view.overlay.goal) {
      this.marker(ctx, vp, view.overlay.goal.position, COLORS.goal, 6, true);
    }

    // user avatar
    const [ux, uy] = worldToScreen(vp, scene.user.position);
    ctx.beginPath();
    ctx.arc(ux, uy, 7, 0, Math.PI * 2);
    ctx.fillStyle = COLORS.user;
    ctx.fill();
    ctx.fillStyle = COLORS.label;
    ctx.font = "11px sans-serif";
    ctx.fillText("user", ux + 10, uy + 4);

    // robot with heading tick
    if (view.robot) {
      const [rx, ry] = worldToScreen(vp, view.robot.position);
      const r = Math.max(5, view.robot.radius * vp.scale);
      ctx.beginPath();
      ctx.arc(rx, ry, r, 0, Math.PI * 2);
      ctx.strokeStyle = COLORS.robot;
      ctx.lineWidth = 2;
      ctx.stroke();
      ctx.beginPath();
      ctx.moveTo(rx, ry);
      ctx.lineTo(rx + r * Math.cos(view.robot.heading),
                 ry - r * Math.sin(view.robot.heading));
      ctx.stroke();
    }
  }

  private marker(ctx: CanvasRenderingContext2D, vp: Viewport, p: Vec2,
                 color: string, radius: number, filled: boolean): void {
    const [sx, sy] = worldToScreen(vp, p);
    ctx.beginPath();
    ctx.arc(sx, sy, radius, 0, Math.PI * 2);
    if (filled) {
      ctx.fillStyle = color;
      ctx.fill();
    } else {
      ctx.strokeStyle = color;
      ctx.lineWidth = 2;
      ctx.stroke();
    }
  }

  private cross(ctx: CanvasRenderingContext2D, vp: Viewport, p: Vec2,
                color: string, size: number): void {
    const [sx, sy] = worldToScreen(vp, p);
    ctx.strokeStyle = color;
    ctx.lineWidth = 2;
    ctx.beginPath();
    ctx.moveTo(sx - size, sy);
    ctx.lineTo(sx + size, sy);
    ctx.moveTo(sx, sy - size);
    ctx.lineTo(sx, sy + size);
    ctx.stroke();
  }
}
