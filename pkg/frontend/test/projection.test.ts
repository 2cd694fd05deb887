import { readFileSync } from "node:fs";
import { describe, expect, it } from "vitest";

import {
  composePermutations,
  identityOrder,
  invertPermutation,
  maxCoordinateGap,
  projectRow,
  reprojectAll,
} from "../src/projection";
import { parseScene, type Scene } from "../src/scene";

const FIXTURES = ["sim-5x5-radviz3d", "iris-4f-viz3d", "wine-13f-radviz3d"];

function loadFixture(name: string): Scene {
  const text = readFileSync(`test/fixtures/${name}.json`, "utf-8");
  return parseScene(text);
}

describe("golden agreement with the projection core", () => {
  for (const name of FIXTURES) {
    it(`reproduces the shipped points of ${name} to 1e-6`, () => {
      const scene = loadFixture(name);
      const recomputed = reprojectAll(scene);
      expect(recomputed.length).toBe(scene.points.length);
      expect(maxCoordinateGap(recomputed, scene.points)).toBeLessThanOrEqual(1e-6);
    });
  }
});

describe("permutation behaviour", () => {
  it("identity permutation is a no-op", () => {
    const scene = loadFixture("sim-5x5-radviz3d");
    const identity = reprojectAll(scene, identityOrder(scene.anchors.length));
    expect(maxCoordinateGap(identity, reprojectAll(scene))).toBe(0);
  });

  it("permutation followed by its inverse restores positions", () => {
    const scene = loadFixture("wine-13f-radviz3d");
    const p = scene.anchors.length;
    const order = [...identityOrder(p)].reverse();
    const roundTrip = composePermutations(order, invertPermutation(order));
    expect(roundTrip).toEqual(identityOrder(p));
    const restored = reprojectAll(scene, roundTrip);
    expect(maxCoordinateGap(restored, scene.points)).toBeLessThanOrEqual(1e-6);
  });

  it("a row supported on two features is fixed by swapping those anchors", () => {
    const anchors = [
      [1, 0, 0],
      [0, 1, 0],
      [-1, 0, 0],
      [0, -1, 0],
    ];
    const row = [0.4, 0.4, 0, 0];
    const base = projectRow(row, anchors, [0, 1, 2, 3], "radviz3d");
    const swapped = projectRow(row, anchors, [1, 0, 2, 3], "radviz3d");
    expect(swapped).toEqual(base);
  });

  it("rejects anything that is not a permutation", () => {
    const scene = loadFixture("iris-4f-viz3d");
    expect(() => reprojectAll(scene, [0, 0, 1, 2])).toThrow(/permutation/);
    expect(() => reprojectAll(scene, [0, 1, 2])).toThrow(/permutation/);
  });
});

describe("method-specific coordinates", () => {
  it("viz3d keeps the mean height under any permutation", () => {
    const scene = loadFixture("iris-4f-viz3d");
    const order = [2, 0, 3, 1];
    const moved = reprojectAll(scene, order);
    for (let i = 0; i < scene.points.length; i++) {
      expect(Math.abs(moved[i][2] - scene.points[i][2])).toBeLessThanOrEqual(1e-12);
    }
  });

  it("radviz2d pins z to zero", () => {
    const anchors = [
      [1, 0, 0],
      [0, 1, 0],
      [-1, 0, 0],
    ];
    const point = projectRow([0.2, 0.5, 0.3], anchors, [0, 1, 2], "radviz2d");
    expect(point[2]).toBe(0);
  });

  it("zero-sum rows sit at the origin", () => {
    const anchors = [
      [1, 0, 0],
      [0, 1, 0],
      [-1, 0, 0],
      [0, -1, 0],
    ];
    expect(projectRow([0, 0, 0, 0], anchors, [0, 1, 2, 3], "radviz3d")).toEqual([0, 0, 0]);
  });

  it("a single active feature lands on its assigned anchor", () => {
    const anchors = [
      [1, 0, 0],
      [0, 1, 0],
      [0, 0, 1],
      [-1, 0, 0],
    ];
    const point = projectRow([0, 0.7, 0, 0], anchors, [3, 2, 1, 0], "radviz3d");
    expect(point).toEqual([0, 0, 1]);
  });
});
