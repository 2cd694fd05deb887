import { describe, expect, it } from "vitest";

import { reprojectAll } from "../src/projection";
import type { Scene } from "../src/scene";

function syntheticScene(n: number, p: number): Scene {
  const anchors: number[][] = [];
  for (let j = 0; j < p; j++) {
    const z = (2 * (j + 1) - 1) / p - 1;
    const r = Math.sqrt(1 - z * z);
    const t = 2.399963229728653 * (j + 1); // golden angle
    anchors.push([Math.cos(t) * r, Math.sin(t) * r, z]);
  }
  const matrix: number[][] = [];
  const labels: string[] = [];
  const rowIds: string[] = [];
  let s = 12345;
  const rand = () => {
    s = (s * 1103515245 + 12345) % 2147483648;
    return s / 2147483648;
  };
  for (let i = 0; i < n; i++) {
    matrix.push(Array.from({ length: p }, () => rand()));
    labels.push(`g${i % 5}`);
    rowIds.push(`r${i}`);
  }
  const scene: Scene = {
    schema_version: 1,
    method: "radviz3d",
    points: matrix.map(() => [0, 0, 0]),
    anchors,
    feature_names: Array.from({ length: p }, (_, j) => `f${j}`),
    normalized_matrix: matrix,
    labels,
    class_palette: Object.fromEntries(
      Array.from({ length: 5 }, (_, k) => [`g${k}`, "#4e79a7"]),
    ),
    row_ids: rowIds,
    overlap: null,
    provenance: { invocation: "synthetic", seed: 0, timestamp: "2026-01-01T00:00:00Z" },
  };
  scene.points = reprojectAll(scene);
  return scene;
}

describe("re-projection speed", () => {
  it("re-projects a 10k-point scene in under 100 ms", () => {
    const scene = syntheticScene(10_000, 10);
    const order = Array.from({ length: 10 }, (_, j) => (j + 3) % 10);
    reprojectAll(scene, order); // warm-up
    const start = performance.now();
    const points = reprojectAll(scene, order);
    const elapsed = performance.now() - start;
    expect(points.length).toBe(10_000);
    expect(elapsed).toBeLessThan(100);
  });
});
