/**
 * Mutable view state. The scene payload itself is never mutated; everything
 * the user can change (visibility, anchor order, camera, hover) lives here.
 */

import type { Scene } from "./scene";
import { SchemaError, sceneClasses } from "./scene";
import { identityOrder, isPermutation, reprojectAll } from "./projection";

export interface Camera {
  yaw: number;
  pitch: number;
  zoom: number;
}

export class ViewState {
  readonly scene: Scene;
  visibleClasses: Set<string>;
  anchorOrder: number[];
  camera: Camera;
  hoveredRow: string | null = null;
  /** Current point positions; starts as the shipped points, re-projected on permutation. */
  points: number[][];

  constructor(scene: Scene) {
    this.scene = scene;
    this.visibleClasses = new Set(sceneClasses(scene));
    this.anchorOrder = identityOrder(scene.anchors.length);
    this.camera = defaultCamera(scene);
    this.points = scene.points.map((q) => [...q]);
  }

  toggleClass(name: string): void {
    if (!(name in this.scene.class_palette)) return;
    if (this.visibleClasses.has(name)) {
      this.visibleClasses.delete(name);
    } else {
      this.visibleClasses.add(name);
    }
  }

  isVisible(rowIndex: number): boolean {
    return this.visibleClasses.has(this.scene.labels[rowIndex]);
  }

  visibleIndices(): number[] {
    const out: number[] = [];
    for (let i = 0; i < this.scene.labels.length; i++) {
      if (this.visibleClasses.has(this.scene.labels[i])) out.push(i);
    }
    return out;
  }

  setAnchorOrder(order: number[]): void {
    if (!isPermutation(order, this.scene.anchors.length)) {
      throw new SchemaError("anchor order must be a valid permutation");
    }
    this.anchorOrder = [...order];
    this.points = reprojectAll(this.scene, this.anchorOrder);
  }

  swapAnchors(a: number, b: number): void {
    const order = [...this.anchorOrder];
    const p = order.length;
    if (a < 0 || b < 0 || a >= p || b >= p) return;
    [order[a], order[b]] = [order[b], order[a]];
    this.setAnchorOrder(order);
  }

  resetAnchorOrder(): void {
    this.setAnchorOrder(identityOrder(this.scene.anchors.length));
  }
}

export function defaultCamera(scene: Scene): Camera {
  // Flat discs read best face-on; spherical scenes get a gentle tilt.
  if (scene.method === "radviz2d") return { yaw: 0, pitch: 0, zoom: 1 };
  return { yaw: 0.6, pitch: 0.35, zoom: 1 };
}
