"""Scene assembly, validation, JSON serialization and standalone HTML export.

The scene JSON is the single contract between this package and any viewer:
it carries the projected points, the anchors, the normalized matrix (so a
viewer can re-project under anchor permutations), labels, a color palette,
an optional overlap heatmap table and provenance. Serialization is
deterministic; only the provenance timestamp varies between runs.
"""

from __future__ import annotations

import json
import re
from datetime import datetime, timezone
from importlib import resources
from pathlib import Path

import numpy as np

from .anchors import AnchorSet, circle_anchors, default_anchors
from .dataio import atomic_write_text
from .errors import SchemaError, TemplateMissing
from .projection import (
    DataSet,
    METHODS,
    minmax_normalize,
    project_dataset,
    project_matrix,
    viz3d_project,
)

SCHEMA_VERSION = 1

SCENE_KEYS = (
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
)

NORMALIZE_MODES = ("minmax", "compositional", "none")

# Fixed categorical palette; a seeded shuffle assigns colors to classes and
# the cycle repeats past twelve classes (viewers vary the marker shape per
# cycle, derived from the class index).
PALETTE = (
    "#4e79a7",
    "#f28e2b",
    "#e15759",
    "#76b7b2",
    "#59a14f",
    "#edc948",
    "#b07aa1",
    "#ff9da7",
    "#9c755f",
    "#bab0ac",
    "#86bcb6",
    "#d37295",
)

_COLOR_RE = re.compile(r"^#[0-9a-fA-F]{6}$")


def class_palette(labels, palette_seed: int = 0) -> dict[str, str]:
    """Deterministic class -> color map: seeded shuffle of the fixed palette,
    cycled in sorted-class order."""
    classes = sorted(set(str(c) for c in labels))
    order = np.random.default_rng(palette_seed).permutation(len(PALETTE))
    return {cls: PALETTE[order[k % len(PALETTE)]] for k, cls in enumerate(classes)}


def _close_rows(values: np.ndarray) -> np.ndarray:
    """Divide each row by its sum (all-zero rows pass through). Projections
    are scale-invariant per row, so this changes nothing downstream while
    keeping the stored matrix inside [0, 1]."""
    sums = values.sum(axis=1)
    safe = np.where(sums == 0.0, 1.0, sums)
    return values / safe[:, None]


def _pad_3d(points: np.ndarray) -> np.ndarray:
    if points.shape[1] == 3:
        return points
    return np.column_stack([points, np.zeros(len(points))])


def build_scene(
    data: DataSet,
    method: str = "radviz3d",
    normalize: str = "minmax",
    force_fibonacci: bool = False,
    palette_seed: int = 0,
    overlap: dict | None = None,
    invocation: str = "",
    seed: int | None = None,
    timestamp: str | None = None,
) -> dict:
    """Project a dataset and bundle everything a viewer needs into a scene dict.

    ``normalize`` chooses the stored matrix: "minmax" rescales columns into
    [0, 1]; "compositional" divides rows by their sums (nonnegative input
    required); "none" passes data through unchanged and requires it to
    already lie in [0, 1].
    """
    if method not in METHODS:
        raise SchemaError(f"unknown method {method!r}; expected one of {METHODS}")
    if normalize not in NORMALIZE_MODES:
        raise SchemaError(f"unknown normalize mode {normalize!r}; expected one of {NORMALIZE_MODES}")

    if normalize == "minmax":
        prepared, _ = minmax_normalize(data)
    elif normalize == "compositional":
        if np.any(data.values < 0):
            raise SchemaError("compositional mode requires nonnegative data")
        prepared = DataSet(_close_rows(data.values), data.feature_names, data.labels, data.row_ids)
    else:
        if data.values.min() < 0.0 or data.values.max() > 1.0:
            raise SchemaError(
                "normalize='none' requires data already in [0, 1]; "
                "use minmax or compositional instead"
            )
        prepared = data

    if method == "radviz3d":
        anchors = default_anchors(data.p, force_fibonacci=force_fibonacci)
        projection = project_dataset(prepared, anchors, normalize=False)
    elif method == "radviz2d":
        anchors = circle_anchors(data.p)
        projection = project_dataset(prepared, anchors, normalize=False)
    else:
        projection = viz3d_project(prepared, normalize=False)
        anchors = projection.anchor_set

    labels = data.labels if data.labels is not None else tuple("all" for _ in range(data.n))
    scene = {
        "schema_version": SCHEMA_VERSION,
        "method": method,
        "points": _pad_3d(projection.points).tolist(),
        "anchors": _pad_3d(anchors.coords).tolist(),
        "feature_names": list(data.feature_names),
        "normalized_matrix": prepared.values.tolist(),
        "labels": list(labels),
        "class_palette": class_palette(labels, palette_seed),
        "row_ids": list(data.row_ids),
        "overlap": overlap,
        "provenance": {
            "invocation": invocation,
            "seed": seed,
            "timestamp": timestamp or datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ"),
        },
    }
    validate_scene(scene)
    return scene


def reproject_points(scene: dict, anchor_order=None) -> np.ndarray:
    """Recompute scene points from the embedded normalized matrix, optionally
    under a permutation of the anchors (feature j maps to anchor order[j])."""
    matrix = np.asarray(scene["normalized_matrix"], dtype=float)
    anchors = np.asarray(scene["anchors"], dtype=float)
    if anchor_order is not None:
        order = list(anchor_order)
        if sorted(order) != list(range(anchors.shape[0])):
            raise SchemaError(f"anchor_order must be a permutation of 0..{anchors.shape[0] - 1}")
        anchors = anchors[order]
    method = scene["method"]
    if method == "radviz3d":
        points, _ = project_matrix(matrix, anchors)
    elif method == "radviz2d":
        plane, _ = project_matrix(matrix, anchors[:, :2])
        points = np.column_stack([plane, np.zeros(len(plane))])
    else:
        plane, _ = project_matrix(matrix, anchors[:, :2])
        points = np.column_stack([plane, matrix.mean(axis=1)])
    return points


def validate_scene(scene: dict) -> None:
    """Structural and numeric checks; raises SchemaError on any violation."""
    if not isinstance(scene, dict):
        raise SchemaError("scene must be a JSON object")
    keys = set(scene.keys())
    expected = set(SCENE_KEYS)
    if keys != expected:
        missing, extra = expected - keys, keys - expected
        raise SchemaError(f"scene keys mismatch (missing {sorted(missing)}, extra {sorted(extra)})")
    if scene["schema_version"] != SCHEMA_VERSION:
        raise SchemaError(f"unsupported schema_version {scene['schema_version']!r}")
    if scene["method"] not in METHODS:
        raise SchemaError(f"unknown method {scene['method']!r}")

    points = np.asarray(scene["points"], dtype=float)
    anchors = np.asarray(scene["anchors"], dtype=float)
    matrix = np.asarray(scene["normalized_matrix"], dtype=float)
    if points.ndim != 2 or points.shape[1] != 3:
        raise SchemaError("points must be an n x 3 array")
    n = points.shape[0]
    if matrix.shape[0] != n or len(scene["labels"]) != n or len(scene["row_ids"]) != n:
        raise SchemaError("points, normalized_matrix, labels and row_ids row counts disagree")
    if anchors.ndim != 2 or anchors.shape[1] != 3 or anchors.shape[0] != len(scene["feature_names"]):
        raise SchemaError("anchors must be p x 3 with one row per feature")
    if matrix.shape[1] != anchors.shape[0]:
        raise SchemaError("normalized_matrix column count must match anchor count")
    if matrix.size and (matrix.min() < 0.0 or matrix.max() > 1.0):
        raise SchemaError("normalized_matrix entries must lie in [0, 1]")
    for cls in set(scene["labels"]):
        if cls not in scene["class_palette"]:
            raise SchemaError(f"class {cls!r} missing from palette")
    for cls, color in scene["class_palette"].items():
        if not isinstance(color, str) or not _COLOR_RE.match(color):
            raise SchemaError(f"palette color {color!r} for class {cls!r} is not #RRGGBB")
    if scene["overlap"] is not None:
        overlap = scene["overlap"]
        if not isinstance(overlap, dict) or not {"classes", "rows", "max_omega"} <= set(overlap):
            raise SchemaError("overlap must carry classes, rows and max_omega")
    # Self-consistency: the embedded matrix must reproduce the shipped points.
    recomputed = reproject_points(scene)
    if n and np.abs(recomputed - points).max() > 1e-9:
        raise SchemaError("normalized_matrix does not reproduce the scene points within 1e-9")


def scene_to_json(scene: dict) -> str:
    ordered = {key: scene[key] for key in SCENE_KEYS}
    return json.dumps(ordered, ensure_ascii=False, separators=(",", ":")) + "\n"


def load_scene(path: str | Path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except FileNotFoundError:
        raise SchemaError(f"scene file not found: {path}") from None
    try:
        scene = json.loads(text)
    except json.JSONDecodeError as err:
        raise SchemaError(f"{path}: not valid JSON ({err})") from None
    validate_scene(scene)
    return scene


def builtin_template() -> str:
    return resources.files("radball.assets").joinpath("viewer_template.html").read_text(
        encoding="utf-8"
    )


def render_html(scene: dict, template_path: str | Path | None = None) -> str:
    """Inject the scene JSON into the viewer template; the result is one
    self-contained HTML file with no network fetches."""
    validate_scene(scene)
    if template_path is None:
        template = builtin_template()
    else:
        template_path = Path(template_path)
        if not template_path.is_file():
            raise TemplateMissing(f"template not found: {template_path}")
        template = template_path.read_text(encoding="utf-8")
    if "{{SCENE_JSON}}" not in template:
        raise TemplateMissing("template lacks the {{SCENE_JSON}} placeholder")
    payload = scene_to_json(scene).rstrip("\n")
    if "</script" in payload.lower():
        # "<\/" is an equivalent JSON string escape that cannot close the tag.
        payload = payload.replace("</", "<\\/")
    return template.replace("{{SCENE_JSON}}", payload)


def export_html(scene: dict, out_path: str | Path, template_path: str | Path | None = None) -> Path:
    return atomic_write_text(out_path, render_html(scene, template_path))
