/**
 * Client-side radial projection: y = U x / sum(x) with the anchor matrix U
 * permuted by the current anchor order. Re-running it from the embedded
 * normalized matrix is what lets the viewer re-project live when the user
 * reorders anchors, without talking to any backend.
 */

import type { Method, Scene } from "./scene";
import { SchemaError } from "./scene";

export function identityOrder(p: number): number[] {
  return Array.from({ length: p }, (_, j) => j);
}

export function isPermutation(order: number[], p: number): boolean {
  if (order.length !== p) return false;
  const seen = new Array<boolean>(p).fill(false);
  for (const value of order) {
    if (!Number.isInteger(value) || value < 0 || value >= p || seen[value]) return false;
    seen[value] = true;
  }
  return true;
}

export function invertPermutation(order: number[]): number[] {
  const inverse = new Array<number>(order.length);
  order.forEach((target, j) => {
    inverse[target] = j;
  });
  return inverse;
}

export function composePermutations(first: number[], second: number[]): number[] {
  // Apply `first`, then `second`: feature j ends up at second[first[j]].
  return first.map((target) => second[target]);
}

/**
 * Project one normalized row. Feature j pulls toward anchor order[j]; a
 * zero-sum row has no equilibrium and maps to the origin.
 */
export function projectRow(
  row: number[],
  anchors: number[][],
  order: number[],
  method: Method,
): [number, number, number] {
  const dims = method === "radviz3d" ? 3 : 2;
  let sum = 0;
  let x = 0;
  let y = 0;
  let z = 0;
  for (let j = 0; j < row.length; j++) {
    const w = row[j];
    sum += w;
    const anchor = anchors[order[j]];
    x += w * anchor[0];
    y += w * anchor[1];
    if (dims === 3) z += w * anchor[2];
  }
  if (sum > 0) {
    x /= sum;
    y /= sum;
    z /= sum;
  } else {
    x = y = z = 0;
  }
  if (method === "viz3d") {
    z = row.length > 0 ? row.reduce((a, b) => a + b, 0) / row.length : 0;
  } else if (method === "radviz2d") {
    z = 0;
  }
  return [x, y, z];
}

/** Re-project every row of the scene under the given anchor order. */
export function reprojectAll(scene: Scene, order?: number[]): number[][] {
  const p = scene.anchors.length;
  const effective = order ?? identityOrder(p);
  if (!isPermutation(effective, p)) {
    throw new SchemaError(`anchor order must be a permutation of 0..${p - 1}`);
  }
  return scene.normalized_matrix.map((row) =>
    projectRow(row, scene.anchors, effective, scene.method),
  );
}

export function maxCoordinateGap(a: number[][], b: number[][]): number {
  let worst = 0;
  for (let i = 0; i < a.length; i++) {
    for (let d = 0; d < 3; d++) {
      const gap = Math.abs(a[i][d] - b[i][d]);
      if (gap > worst) worst = gap;
    }
  }
  return worst;
}
