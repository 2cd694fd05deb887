/**
 * Canvas renderer: orthographic view of the unit ball with painter-sorted
 * markers, wireframe great circles, labeled anchors and a silhouette ring.
 * Deterministic for a given (scene, state): no animation state leaks in.
 */

import type { Scene } from "./scene";
import type { ViewState } from "./state";

export interface ScreenPoint {
  x: number;
  y: number;
  depth: number;
  row: number;
}

export function rotate(q: number[], yaw: number, pitch: number): [number, number, number] {
  const cy = Math.cos(yaw);
  const sy = Math.sin(yaw);
  const cp = Math.cos(pitch);
  const sp = Math.sin(pitch);
  const x = q[0] * cy + q[2] * sy;
  const z0 = -q[0] * sy + q[2] * cy;
  const y = q[1] * cp - z0 * sp;
  const z = q[1] * sp + z0 * cp;
  return [x, y, z];
}

export class Renderer {
  private readonly canvas: HTMLCanvasElement;
  private readonly ctx: CanvasRenderingContext2D;
  /** Screen positions of the latest draw, for hit-testing hovers. */
  screenPoints: ScreenPoint[] = [];

  constructor(canvas: HTMLCanvasElement) {
    this.canvas = canvas;
    const ctx = canvas.getContext("2d");
    if (!ctx) throw new Error("2D canvas context unavailable");
    this.ctx = ctx;
  }

  private scale(zoom: number): number {
    return Math.min(this.canvas.width, this.canvas.height) * 0.42 * zoom;
  }

  private toScreen(v: [number, number, number], zoom: number): [number, number, number] {
    const s = this.scale(zoom);
    return [this.canvas.width / 2 + v[0] * s, this.canvas.height / 2 - v[1] * s, v[2]];
  }

  private ring(axis: 0 | 1 | 2, state: ViewState): void {
    const { ctx } = this;
    ctx.beginPath();
    for (let k = 0; k <= 72; k++) {
      const t = (2 * Math.PI * k) / 72;
      const q: number[] =
        axis === 0 ? [0, Math.cos(t), Math.sin(t)]
        : axis === 1 ? [Math.cos(t), 0, Math.sin(t)]
        : [Math.cos(t), Math.sin(t), 0];
      const v = this.toScreen(rotate(q, state.camera.yaw, state.camera.pitch), state.camera.zoom);
      if (k === 0) ctx.moveTo(v[0], v[1]);
      else ctx.lineTo(v[0], v[1]);
    }
    ctx.stroke();
  }

  draw(scene: Scene, state: ViewState): void {
    const { ctx, canvas } = this;
    const { yaw, pitch, zoom } = state.camera;
    ctx.clearRect(0, 0, canvas.width, canvas.height);

    ctx.strokeStyle = "#d3dbe3";
    ctx.lineWidth = 1;
    ctx.beginPath();
    ctx.arc(canvas.width / 2, canvas.height / 2, this.scale(zoom), 0, 2 * Math.PI);
    ctx.stroke();
    this.ring(0, state);
    this.ring(1, state);
    this.ring(2, state);

    this.screenPoints = [];
    for (let i = 0; i < state.points.length; i++) {
      if (!state.isVisible(i)) continue;
      const v = this.toScreen(rotate(state.points[i], yaw, pitch), zoom);
      this.screenPoints.push({ x: v[0], y: v[1], depth: v[2], row: i });
    }
    this.screenPoints.sort((a, b) => a.depth - b.depth);
    ctx.globalAlpha = 0.88;
    for (const sp of this.screenPoints) {
      ctx.beginPath();
      ctx.fillStyle = scene.class_palette[scene.labels[sp.row]];
      ctx.arc(sp.x, sp.y, 3.2 + 1.3 * (sp.depth + 1), 0, 2 * Math.PI);
      ctx.fill();
    }
    ctx.globalAlpha = 1;

    ctx.font = "11px system-ui, sans-serif";
    ctx.fillStyle = "#2a3440";
    for (let j = 0; j < scene.anchors.length; j++) {
      const anchor = scene.anchors[state.anchorOrder[j]];
      const v = this.toScreen(rotate(anchor, yaw, pitch), zoom);
      ctx.beginPath();
      ctx.arc(v[0], v[1], 3, 0, 2 * Math.PI);
      ctx.fill();
      ctx.fillText(scene.feature_names[j], v[0] + 6, v[1] - 4);
    }
  }

  /** Nearest visible point within `radius` CSS pixels, or null. */
  hitTest(x: number, y: number, radius = 10): ScreenPoint | null {
    let best: ScreenPoint | null = null;
    let bestDist = radius * radius;
    for (const sp of this.screenPoints) {
      const d = (sp.x - x) ** 2 + (sp.y - y) ** 2;
      if (d < bestDist) {
        bestDist = d;
        best = sp;
      }
    }
    return best;
  }

  snapshot(): string {
    return this.canvas.toDataURL("image/png");
  }
}
