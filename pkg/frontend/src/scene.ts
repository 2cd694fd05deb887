/**
 * Scene payload: the JSON contract between the projection core and this
 * viewer. Parsing validates structure eagerly so rendering code can assume
 * a well-formed scene; any violation raises SchemaError with a message fit
 * for the error banner.
 */

export type Method = "radviz3d" | "radviz2d" | "viz3d";

export interface HeatmapRow {
  class_i: string;
  class_j: string;
  omega: number;
  color_value: number;
}

export interface HeatmapTable {
  classes: string[];
  rows: HeatmapRow[];
  max_omega: number;
}

export interface Provenance {
  invocation: string;
  seed: number | null;
  timestamp: string;
}

export interface Scene {
  schema_version: number;
  method: Method;
  points: number[][];
  anchors: number[][];
  feature_names: string[];
  normalized_matrix: number[][];
  labels: string[];
  class_palette: Record<string, string>;
  row_ids: string[];
  overlap: HeatmapTable | null;
  provenance: Provenance;
}

export const SUPPORTED_SCHEMA_VERSION = 1;

const SCENE_KEYS = [
  "schema_version",
  "method",
  "points",
  "anchors",
  "feature_names",
  "normalized_matrix",
  "labels",
  "class_palette",
  "row_ids",
  "overlap",
  "provenance",
] as const;

const METHODS: Method[] = ["radviz3d", "radviz2d", "viz3d"];
const COLOR_RE = /^#[0-9a-fA-F]{6}$/;

export class SchemaError extends Error {
  constructor(message: string) {
    super(message);
    this.name = "SchemaError";
  }
}

function isMatrix(value: unknown, columns: number | null): value is number[][] {
  if (!Array.isArray(value)) return false;
  for (const row of value) {
    if (!Array.isArray(row)) return false;
    if (columns !== null && row.length !== columns) return false;
    for (const cell of row) {
      if (typeof cell !== "number" || !Number.isFinite(cell)) return false;
    }
  }
  return true;
}

export function validateScene(raw: unknown): Scene {
  if (typeof raw !== "object" || raw === null || Array.isArray(raw)) {
    throw new SchemaError("scene must be a JSON object");
  }
  const scene = raw as Record<string, unknown>;
  const keys = Object.keys(scene).sort();
  const expected = [...SCENE_KEYS].sort();
  if (keys.length !== expected.length || keys.some((k, i) => k !== expected[i])) {
    throw new SchemaError(`scene keys mismatch: got [${keys.join(", ")}]`);
  }
  if (scene.schema_version !== SUPPORTED_SCHEMA_VERSION) {
    throw new SchemaError(`unsupported schema_version ${String(scene.schema_version)}`);
  }
  if (!METHODS.includes(scene.method as Method)) {
    throw new SchemaError(`unknown method ${String(scene.method)}`);
  }
  if (!isMatrix(scene.points, 3)) throw new SchemaError("points must be an n x 3 number array");
  if (!isMatrix(scene.anchors, 3)) throw new SchemaError("anchors must be a p x 3 number array");
  const n = (scene.points as number[][]).length;
  const p = (scene.anchors as number[][]).length;
  const names = scene.feature_names;
  if (!Array.isArray(names) || names.length !== p || names.some((f) => typeof f !== "string")) {
    throw new SchemaError("feature_names must name every anchor");
  }
  if (!isMatrix(scene.normalized_matrix, p) || (scene.normalized_matrix as number[][]).length !== n) {
    throw new SchemaError("normalized_matrix must be n x p");
  }
  for (const row of scene.normalized_matrix as number[][]) {
    for (const cell of row) {
      if (cell < 0 || cell > 1) throw new SchemaError("normalized_matrix entries must lie in [0, 1]");
    }
  }
  const labels = scene.labels;
  const rowIds = scene.row_ids;
  if (!Array.isArray(labels) || labels.length !== n) throw new SchemaError("labels must have one entry per point");
  if (!Array.isArray(rowIds) || rowIds.length !== n) throw new SchemaError("row_ids must have one entry per point");
  const palette = scene.class_palette;
  if (typeof palette !== "object" || palette === null || Array.isArray(palette)) {
    throw new SchemaError("class_palette must map classes to colors");
  }
  for (const cls of new Set(labels as string[])) {
    const color = (palette as Record<string, unknown>)[cls];
    if (typeof color !== "string" || !COLOR_RE.test(color)) {
      throw new SchemaError(`class ${cls} lacks a #RRGGBB palette color`);
    }
  }
  if (scene.overlap !== null) {
    const overlap = scene.overlap as Record<string, unknown>;
    if (typeof overlap !== "object" || overlap === null || !Array.isArray(overlap.rows)) {
      throw new SchemaError("overlap must be null or a heatmap table with rows");
    }
  }
  const provenance = scene.provenance as Record<string, unknown>;
  if (typeof provenance !== "object" || provenance === null || typeof provenance.timestamp !== "string") {
    throw new SchemaError("provenance must carry a timestamp");
  }
  return raw as Scene;
}

export function parseScene(text: string): Scene {
  let raw: unknown;
  try {
    raw = JSON.parse(text);
  } catch (err) {
    throw new SchemaError(`not valid JSON: ${(err as Error).message}`);
  }
  return validateScene(raw);
}

export function sceneClasses(scene: Scene): string[] {
  return Object.keys(scene.class_palette).sort();
}

/** Rows whose normalized attributes sum to zero sit at the origin by convention. */
export function zeroSumRows(scene: Scene): Set<number> {
  const out = new Set<number>();
  scene.normalized_matrix.forEach((row, i) => {
    if (row.every((v) => v === 0)) out.add(i);
  });
  return out;
}
