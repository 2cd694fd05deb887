import json

import numpy as np
import pytest

from radball.errors import SchemaError, TemplateMissing
from radball.overlap import fit_components, heatmap_export, overlap_matrix
from radball.projection import DataSet
from radball.scene import (
    build_scene,
    export_html,
    load_scene,
    render_html,
    reproject_points,
    scene_to_json,
    validate_scene,
)


@pytest.fixture
def labeled_data():
    rng = np.random.default_rng(0)
    values = np.vstack(
        [rng.normal(loc=k, size=(12, 5)) for k in range(5)]
    )
    labels = tuple(f"g{k}" for k in range(5) for _ in range(12))
    return DataSet(values, ("a", "b", "c", "d", "e"), labels)


class TestBuildScene:
    def test_five_distinct_palette_entries(self, labeled_data):
        scene = build_scene(labeled_data, timestamp="2026-01-01T00:00:00Z")
        assert len(set(scene["class_palette"].values())) == 5

    def test_radviz2d_z_is_zero(self, labeled_data):
        scene = build_scene(labeled_data, method="radviz2d", timestamp="2026-01-01T00:00:00Z")
        z = np.asarray(scene["points"])[:, 2]
        assert np.all(z == 0.0)

    def test_identical_invocations_byte_identical(self, labeled_data):
        kwargs = dict(method="radviz3d", palette_seed=3, invocation="radball scene x.csv",
                      seed=3, timestamp="2026-01-01T00:00:00Z")
        a = scene_to_json(build_scene(labeled_data, **kwargs))
        b = scene_to_json(build_scene(labeled_data, **kwargs))
        assert a == b

    def test_self_consistency_all_methods(self, labeled_data):
        for method in ("radviz3d", "radviz2d", "viz3d"):
            scene = build_scene(labeled_data, method=method, timestamp="2026-01-01T00:00:00Z")
            points = reproject_points(scene)
            assert np.abs(points - np.asarray(scene["points"])).max() <= 1e-9

    def test_compositional_mode(self):
        rng = np.random.default_rng(1)
        raw = rng.uniform(0.0, 10.0, size=(20, 4))
        data = DataSet(raw, ("w", "x", "y", "z"))
        scene = build_scene(data, normalize="compositional", timestamp="2026-01-01T00:00:00Z")
        matrix = np.asarray(scene["normalized_matrix"])
        np.testing.assert_allclose(matrix.sum(axis=1), 1.0, atol=1e-12)

    def test_none_mode_requires_unit_interval(self):
        data = DataSet(np.full((4, 4), 7.0), ("w", "x", "y", "z"))
        with pytest.raises(SchemaError):
            build_scene(data, normalize="none")

    def test_unlabeled_scene_uses_all(self):
        data = DataSet(np.random.default_rng(2).uniform(size=(6, 4)), ("w", "x", "y", "z"))
        scene = build_scene(data, timestamp="2026-01-01T00:00:00Z")
        assert set(scene["labels"]) == {"all"}
        assert set(scene["class_palette"]) == {"all"}

    def test_overlap_embedded(self, labeled_data):
        comps = fit_components(labeled_data)
        table = heatmap_export(overlap_matrix(comps, n_draws=5_000, seed=0), sorted(set(labeled_data.labels)))
        scene = build_scene(labeled_data, overlap=table, timestamp="2026-01-01T00:00:00Z")
        assert scene["overlap"]["max_omega"] == table["max_omega"]


class TestValidateScene:
    def test_detects_tampered_points(self, labeled_data):
        scene = build_scene(labeled_data, timestamp="2026-01-01T00:00:00Z")
        scene["points"][0][0] += 0.5
        with pytest.raises(SchemaError):
            validate_scene(scene)

    def test_detects_missing_key(self, labeled_data):
        scene = build_scene(labeled_data, timestamp="2026-01-01T00:00:00Z")
        del scene["row_ids"]
        with pytest.raises(SchemaError):
            validate_scene(scene)

    def test_detects_bad_color(self, labeled_data):
        scene = build_scene(labeled_data, timestamp="2026-01-01T00:00:00Z")
        scene["class_palette"]["g0"] = "red"
        with pytest.raises(SchemaError):
            validate_scene(scene)

    def test_detects_unknown_version(self, labeled_data):
        scene = build_scene(labeled_data, timestamp="2026-01-01T00:00:00Z")
        scene["schema_version"] = 99
        with pytest.raises(SchemaError):
            validate_scene(scene)

    def test_load_scene_round_trip(self, labeled_data, tmp_path):
        scene = build_scene(labeled_data, timestamp="2026-01-01T00:00:00Z")
        path = tmp_path / "scene.json"
        path.write_text(scene_to_json(scene), encoding="utf-8")
        assert load_scene(path) == json.loads(scene_to_json(scene))


class TestReprojection:
    def test_identity_permutation_is_noop(self, labeled_data):
        scene = build_scene(labeled_data, timestamp="2026-01-01T00:00:00Z")
        points = reproject_points(scene, anchor_order=list(range(5)))
        assert np.abs(points - np.asarray(scene["points"])).max() <= 1e-12

    def test_two_feature_row_midpoint_invariance(self):
        # A row supported on exactly two features is unchanged when those
        # two anchors swap: (u_i + u_j)/2 is symmetric.
        values = np.array([[0.5, 0.5, 0.0, 0.0], [0.1, 0.2, 0.3, 0.4]])
        data = DataSet(values, ("a", "b", "c", "d"))
        scene = build_scene(data, normalize="none", timestamp="2026-01-01T00:00:00Z")
        swapped = reproject_points(scene, anchor_order=[1, 0, 2, 3])
        np.testing.assert_allclose(swapped[0], np.asarray(scene["points"])[0], atol=1e-12)

    def test_invalid_permutation_rejected(self, labeled_data):
        scene = build_scene(labeled_data, timestamp="2026-01-01T00:00:00Z")
        with pytest.raises(SchemaError):
            reproject_points(scene, anchor_order=[0, 0, 1, 2, 3])


class TestExportHtml:
    def test_scene_json_embedded_verbatim(self, labeled_data, tmp_path):
        scene = build_scene(labeled_data, timestamp="2026-01-01T00:00:00Z")
        out = tmp_path / "scene.html"
        export_html(scene, out)
        html = out.read_text(encoding="utf-8")
        assert scene_to_json(scene).rstrip("\n") in html
        assert "{{SCENE_JSON}}" not in html

    def test_offline_no_network_fetches(self, labeled_data):
        html = render_html(build_scene(labeled_data, timestamp="2026-01-01T00:00:00Z"))
        assert "http://" not in html and "https://" not in html

    def test_heatmap_panel_present_with_overlap(self, labeled_data):
        comps = fit_components(labeled_data)
        table = heatmap_export(overlap_matrix(comps, n_draws=5_000, seed=0), sorted(set(labeled_data.labels)))
        html = render_html(build_scene(labeled_data, overlap=table, timestamp="2026-01-01T00:00:00Z"))
        assert 'id="heatmap-panel"' in html
        embedded = json.loads(html.split('type="application/json">', 1)[1].split("</script>", 1)[0])
        assert embedded["overlap"] is not None

    def test_unlabeled_scene_legend_class(self):
        data = DataSet(np.random.default_rng(3).uniform(size=(5, 4)), ("w", "x", "y", "z"))
        html = render_html(build_scene(data, timestamp="2026-01-01T00:00:00Z"))
        embedded = json.loads(html.split('type="application/json">', 1)[1].split("</script>", 1)[0])
        assert list(embedded["class_palette"]) == ["all"]

    def test_missing_template(self, labeled_data, tmp_path):
        scene = build_scene(labeled_data, timestamp="2026-01-01T00:00:00Z")
        with pytest.raises(TemplateMissing):
            render_html(scene, tmp_path / "nope.html")

    def test_template_without_placeholder(self, labeled_data, tmp_path):
        bad = tmp_path / "bad.html"
        bad.write_text("<html></html>", encoding="utf-8")
        with pytest.raises(TemplateMissing):
            render_html(build_scene(labeled_data, timestamp="2026-01-01T00:00:00Z"), bad)

    def test_custom_template(self, labeled_data, tmp_path):
        custom = tmp_path / "custom.html"
        custom.write_text("<html><body><script>{{SCENE_JSON}}</script></body></html>", encoding="utf-8")
        html = render_html(build_scene(labeled_data, timestamp="2026-01-01T00:00:00Z"), custom)
        assert html.startswith("<html>") and '"schema_version":1' in html
