"""Command-line interface: anchors, project, overlap, simulate, scene, export-html.

Every subcommand is deterministic given --seed; file writes are atomic.
Exit codes: 0 success, 2 input error, 3 numeric/calibration failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import shlex
import sys
from pathlib import Path

import numpy as np

from . import scene as scene_mod
from .anchors import circle_anchors, default_anchors
from .dataio import atomic_write_text, format_float, load_csv, save_csv
from .errors import InvalidDataset, ToolkitError
from .overlap import fit_components, generalized_overlap, heatmap_export, overlap_matrix
from .projection import DataSet, project_dataset, viz3d_project
from .simulate import SimSpec, simulate_mixture


def _common_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--seed", type=int, default=0, help="seed for every random choice")
    parser.add_argument("--format", choices=("csv", "json"), default="csv", help="stdout/table format")
    parser.add_argument("--out", type=Path, default=None, help="output path (stdout if omitted)")


def _data_flags(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("input", type=Path, help="input CSV with a header row")
    parser.add_argument("--label-column", default=None, help="class label column name")
    parser.add_argument("--id-column", default=None, help="row identifier column name")
    parser.add_argument("--drop-columns", default=None, help="comma-separated feature columns to drop")
    parser.add_argument(
        "--normalize",
        choices=scene_mod.NORMALIZE_MODES,
        default=None,
        help="minmax (default for projections), compositional (row proportions) or none",
    )
    parser.add_argument(
        "--method", choices=("radviz3d", "radviz2d", "viz3d"), default="radviz3d"
    )
    parser.add_argument(
        "--fibonacci", action="store_true", help="force the spiral anchor set even for 4/6/8/12/20 features"
    )


def _emit(text: str, out: Path | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        atomic_write_text(out, text)


def _drop_columns(data: DataSet, spec: str | None) -> DataSet:
    if not spec:
        return data
    drop = [name.strip() for name in spec.split(",") if name.strip()]
    missing = [name for name in drop if name not in data.feature_names]
    if missing:
        raise InvalidDataset(f"--drop-columns names not in features: {missing}")
    keep = [j for j, name in enumerate(data.feature_names) if name not in drop]
    return DataSet(
        data.values[:, keep],
        tuple(data.feature_names[j] for j in keep),
        data.labels,
        data.row_ids,
    )


def _load(args) -> DataSet:
    data = load_csv(args.input, args.label_column, args.id_column)
    return _drop_columns(data, args.drop_columns)


def _csv_text(rows: list[list]) -> str:
    buffer = io.StringIO()
    writer = csv.writer(buffer, lineterminator="\n")
    writer.writerows(rows)
    return buffer.getvalue()


def _json_text(payload) -> str:
    return json.dumps(payload, ensure_ascii=False, separators=(",", ":")) + "\n"


def _invocation(argv) -> str:
    return "radball " + " ".join(shlex.quote(a) for a in argv)


# --- subcommands -------------------------------------------------------------


def _cmd_anchors(args) -> int:
    if args.circle:
        anchor_set = circle_anchors(args.count)
    else:
        anchor_set = default_anchors(args.count, force_fibonacci=args.fibonacci)
    coords = anchor_set.coords
    if coords.shape[1] == 2:
        coords = np.column_stack([coords, np.zeros(len(coords))])
    if args.format == "csv":
        rows = [["index", "x", "y", "z"]]
        rows += [[j + 1] + [format_float(v) for v in coords[j]] for j in range(len(coords))]
        _emit(_csv_text(rows), args.out)
    else:
        _emit(
            _json_text(
                {
                    "method": anchor_set.method,
                    "solid": anchor_set.solid,
                    "coords": coords.tolist(),
                }
            ),
            args.out,
        )
    return 0


def _project_for_args(data: DataSet, args):
    normalize = args.normalize or "minmax"
    if normalize == "compositional":
        if np.any(data.values < 0):
            raise InvalidDataset("compositional mode requires nonnegative data")
        sums = data.values.sum(axis=1)
        closed = data.values / np.where(sums == 0.0, 1.0, sums)[:, None]
        data = DataSet(closed, data.feature_names, data.labels, data.row_ids)
    do_minmax = normalize == "minmax"
    if args.method == "radviz3d":
        anchors = default_anchors(data.p, force_fibonacci=args.fibonacci)
        return project_dataset(data, anchors, normalize=do_minmax)
    if args.method == "radviz2d":
        return project_dataset(data, circle_anchors(data.p), normalize=do_minmax)
    return viz3d_project(data, normalize=do_minmax)


def _cmd_project(args) -> int:
    data = _load(args)
    projection = _project_for_args(data, args)
    points = projection.points
    if points.shape[1] == 2:
        points = np.column_stack([points, np.zeros(len(points))])
    degenerate = set(projection.degenerate_rows)
    if args.format == "csv":
        rows = [["row_id", "x", "y", "z", "label", "degenerate"]]
        for k in range(len(points)):
            rows.append(
                [data.row_ids[k]]
                + [format_float(v) for v in points[k]]
                + [data.labels[k] if data.labels else "all", int(k in degenerate)]
            )
        _emit(_csv_text(rows), args.out)
    else:
        _emit(
            _json_text(
                {
                    "method": projection.method,
                    "points": points.tolist(),
                    "row_ids": list(data.row_ids),
                    "labels": list(data.labels) if data.labels else ["all"] * data.n,
                    "feature_names": list(data.feature_names),
                    "anchors": projection.anchor_set.coords.tolist(),
                    "degenerate_rows": list(projection.degenerate_rows),
                }
            ),
            args.out,
        )
    return 0


def _overlap_payload(args):
    data = _load(args)
    if args.label_column is None:
        raise InvalidDataset("overlap analysis requires --label-column")
    # Components are fitted on raw data by default; minmax is offered for
    # parity with the displays (it cannot change the result: per-column
    # affine maps transform the fitted Gaussians on both sides of the
    # Bayes comparison identically). Row closure would change them.
    if args.normalize == "compositional":
        raise InvalidDataset("overlap fits per-class Gaussians; use --normalize minmax or none")
    if args.normalize == "minmax":
        from .projection import minmax_normalize

        data = minmax_normalize(data)[0]
    components = fit_components(data)
    classes = sorted(set(data.labels))
    matrix = overlap_matrix(components, n_draws=args.draws, seed=args.seed)
    return classes, matrix


def _cmd_overlap(args) -> int:
    classes, matrix = _overlap_payload(args)
    heatmap = heatmap_export(matrix, classes)
    if args.format == "csv":
        rows = [["class"] + classes]
        for i, cls in enumerate(classes):
            rows.append([cls] + [format_float(v) for v in matrix.omega[i]])
        _emit(_csv_text(rows), args.out)
    else:
        _emit(
            _json_text(
                {
                    "classes": classes,
                    "omega": matrix.omega.tolist(),
                    "generalized_overlap": generalized_overlap(matrix),
                    "n_draws": matrix.n_draws,
                    "seed": matrix.seed,
                }
            ),
            args.out,
        )
    if args.heatmap_out is not None:
        atomic_write_text(args.heatmap_out, _json_text(heatmap))
    return 0


def _cmd_simulate(args) -> int:
    spec = SimSpec(
        n_classes=args.classes,
        n_features=args.dims,
        n_rows=args.rows,
        target_omega=args.omega,
        spherical=args.spherical,
        homogeneous=args.homogeneous,
        seed=args.seed,
    )
    data, components, achieved = simulate_mixture(spec)
    save_csv(data, args.out, label_column="class")
    sidecar = args.out.with_suffix(".json")
    payload = {
        "target_omega": spec.target_omega,
        "achieved_omega": achieved,
        "seed": spec.seed,
        "spherical": spec.spherical,
        "homogeneous": spec.homogeneous,
        "components": [
            {
                "mean": comp.mean.tolist(),
                "covariance": comp.covariance.tolist(),
                "weight": comp.weight,
            }
            for comp in components
        ],
    }
    atomic_write_text(sidecar, _json_text(payload))
    return 0


def _cmd_scene(args, argv) -> int:
    data = _load(args)
    overlap = None
    if args.with_overlap:
        if args.label_column is None:
            raise InvalidDataset("--with-overlap requires --label-column")
        components = fit_components(data)
        classes = sorted(set(data.labels))
        overlap = heatmap_export(overlap_matrix(components, n_draws=args.draws, seed=args.seed), classes)
    built = scene_mod.build_scene(
        data,
        method=args.method,
        normalize=args.normalize or "minmax",
        force_fibonacci=args.fibonacci,
        palette_seed=args.seed,
        overlap=overlap,
        invocation=_invocation(argv),
        seed=args.seed,
    )
    _emit(scene_mod.scene_to_json(built), args.out)
    return 0


def _cmd_export_html(args) -> int:
    built = scene_mod.load_scene(args.scene)
    out = args.out or args.scene.with_suffix(".html")
    scene_mod.export_html(built, out, args.template)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="radball",
        description="3D radial visualization: anchors, projections, overlap diagnostics, "
        "calibrated mixture simulation and interactive scene export.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_anchors = sub.add_parser("anchors", help="emit an anchor-point set")
    p_anchors.add_argument("--count", type=int, required=True, help="number of anchors")
    p_anchors.add_argument("--circle", action="store_true", help="2D circle set instead of spherical")
    p_anchors.add_argument("--fibonacci", action="store_true", help="force the spiral set")
    _common_flags(p_anchors)

    p_project = sub.add_parser("project", help="project a CSV into the unit ball")
    _data_flags(p_project)
    _common_flags(p_project)

    p_overlap = sub.add_parser("overlap", help="pairwise class overlap matrix from labeled CSV")
    _data_flags(p_overlap)
    _common_flags(p_overlap)
    p_overlap.add_argument("--draws", type=int, default=100_000, help="Monte-Carlo draws per direction")
    p_overlap.add_argument("--heatmap-out", type=Path, default=None, help="write heatmap table JSON here")

    p_sim = sub.add_parser("simulate", help="simulate a mixture at a target generalized overlap")
    p_sim.add_argument("--classes", type=int, required=True)
    p_sim.add_argument("--dims", type=int, required=True)
    p_sim.add_argument("--rows", type=int, required=True)
    p_sim.add_argument("--omega", type=float, required=True, help="target generalized overlap")
    p_sim.add_argument("--spherical", action="store_true")
    p_sim.add_argument("--homogeneous", action="store_true")
    p_sim.add_argument("--seed", type=int, default=0)
    p_sim.add_argument("--out", type=Path, required=True, help="labeled CSV path (JSON sidecar alongside)")

    p_scene = sub.add_parser("scene", help="build a viewer scene JSON from a CSV")
    _data_flags(p_scene)
    _common_flags(p_scene)
    p_scene.add_argument("--with-overlap", action="store_true", help="embed the overlap heatmap")
    p_scene.add_argument("--draws", type=int, default=100_000)

    p_html = sub.add_parser("export-html", help="wrap a scene JSON into one offline HTML file")
    p_html.add_argument("scene", type=Path, help="scene JSON path")
    p_html.add_argument("--template", type=Path, default=None, help="custom viewer template")
    p_html.add_argument("--out", type=Path, default=None, help="output HTML (default: scene path with .html)")

    return parser


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        if args.command == "anchors":
            return _cmd_anchors(args)
        if args.command == "project":
            return _cmd_project(args)
        if args.command == "overlap":
            return _cmd_overlap(args)
        if args.command == "simulate":
            return _cmd_simulate(args)
        if args.command == "scene":
            return _cmd_scene(args, argv)
        if args.command == "export-html":
            return _cmd_export_html(args)
        parser.error(f"unknown command {args.command!r}")
    except ToolkitError as err:
        print(f"error: {err}", file=sys.stderr)
        return err.exit_code
    except FileNotFoundError as err:
        print(f"error: {err}", file=sys.stderr)
        return 2
    except np.linalg.LinAlgError as err:
        print(f"numeric error: {err}", file=sys.stderr)
        return 3
    return 0


if __name__ == "__main__":
    sys.exit(main())
