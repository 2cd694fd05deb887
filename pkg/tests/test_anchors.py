import numpy as np
import pytest

from radball.anchors import (
    AnchorSet,
    GOLDEN_RATIO,
    PLATONIC_CARDINALITIES,
    PLATONIC_DOT_SPECTRA,
    circle_anchors,
    default_anchors,
    fibonacci_anchors,
    min_pairwise_angle,
    platonic_anchors,
)
from radball.errors import DegenerateSet, UnsupportedCardinality

SQRT3 = np.sqrt(3.0)


def pairwise_dots(coords):
    gram = coords @ coords.T
    iu = np.triu_indices(len(coords), 1)
    return gram[iu]


class TestPlatonic:
    def test_tetrahedron_vertices(self):
        expected = np.array([(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)]) / SQRT3
        np.testing.assert_allclose(platonic_anchors(4).coords, expected, atol=1e-15)

    def test_octahedron_vertices(self):
        expected = np.array(
            [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)], float
        )
        np.testing.assert_allclose(platonic_anchors(6).coords, expected, atol=1e-15)

    def test_cube_vertices_unit_norm(self):
        coords = platonic_anchors(8).coords
        signs = {tuple(np.sign(row).astype(int)) for row in coords}
        assert len(signs) == 8
        np.testing.assert_allclose(np.linalg.norm(coords, axis=1), 1.0, atol=1e-15)

    @pytest.mark.parametrize("p", PLATONIC_CARDINALITIES)
    def test_unit_norm_and_centroid(self, p):
        coords = platonic_anchors(p).coords
        assert coords.shape == (p, 3)
        assert np.abs(np.linalg.norm(coords, axis=1) - 1.0).max() <= 1e-12
        assert np.abs(coords.sum(axis=0)).max() <= 1e-10

    @pytest.mark.parametrize("p", PLATONIC_CARDINALITIES)
    def test_dot_product_spectrum(self, p):
        dots = pairwise_dots(platonic_anchors(p).coords)
        spectrum = np.array(PLATONIC_DOT_SPECTRA[p])
        gaps = np.abs(dots[:, None] - spectrum[None, :]).min(axis=1)
        assert gaps.max() <= 1e-10

    def test_solid_names_keyed_on_count(self):
        assert platonic_anchors(12).solid == "icosahedron"
        assert platonic_anchors(20).solid == "dodecahedron"

    @pytest.mark.parametrize("p", [3, 5, 7, 10, 13, 21])
    def test_unsupported_count(self, p):
        with pytest.raises(UnsupportedCardinality):
            platonic_anchors(p)


class TestFibonacci:
    def test_heights_are_arithmetic_progression(self):
        for p in (5, 6, 7, 9, 100):
            coords = fibonacci_anchors(p).coords
            j = np.arange(1, p + 1, dtype=float)
            assert np.array_equal(np.sort(coords[:, 2]), (2.0 * j - 1.0) / p - 1.0)

    def test_p5_third_point_on_equator(self):
        coords = fibonacci_anchors(5).coords
        theta = 6.0 * np.pi / GOLDEN_RATIO
        np.testing.assert_allclose(coords[2], [np.cos(theta), np.sin(theta), 0.0], atol=1e-12)

    def test_p5_first_height(self):
        assert fibonacci_anchors(5).coords[0, 2] == 1.0 / 5.0 - 1.0  # -0.8

    def test_p6_first_height(self):
        assert fibonacci_anchors(6).coords[0, 2] == 1.0 / 6.0 - 1.0  # -5/6

    @pytest.mark.parametrize("p", [4, 5, 17, 100, 500])
    def test_unit_norm(self, p):
        coords = fibonacci_anchors(p).coords
        assert np.abs(np.linalg.norm(coords, axis=1) - 1.0).max() <= 1e-12

    def test_too_small(self):
        with pytest.raises(UnsupportedCardinality):
            fibonacci_anchors(3)

    def test_well_separation_regression_bound(self):
        # Empirical floor: min over p in 5..500 of angle*sqrt(p) is ~3.09.
        for p in range(5, 501):
            angle = min_pairwise_angle(fibonacci_anchors(p))
            assert angle >= 3.0 / np.sqrt(p), f"p={p}: {angle}"


class TestCircle:
    def test_p4_axes(self):
        expected = np.array([(1, 0), (0, 1), (-1, 0), (0, -1)], float)
        np.testing.assert_allclose(circle_anchors(4).coords, expected, atol=1e-15)

    def test_p3_adjacent_angle(self):
        coords = circle_anchors(3).coords
        angle = np.arccos(np.clip(coords[0] @ coords[1], -1, 1))
        np.testing.assert_allclose(angle, 2 * np.pi / 3, atol=1e-12)

    def test_p6_min_angle(self):
        np.testing.assert_allclose(min_pairwise_angle(circle_anchors(6)), np.pi / 3, atol=1e-12)

    def test_too_small(self):
        with pytest.raises(UnsupportedCardinality):
            circle_anchors(2)


class TestDefaultAnchors:
    def test_auto_picks_polyhedron(self):
        assert default_anchors(6).method == "platonic"
        np.testing.assert_array_equal(default_anchors(6).coords, platonic_anchors(6).coords)

    def test_force_fibonacci(self):
        anchors = default_anchors(6, force_fibonacci=True)
        assert anchors.method == "fibonacci"
        assert anchors.coords[0, 2] == 1.0 / 6.0 - 1.0

    def test_auto_fallback(self):
        assert default_anchors(5).method == "fibonacci"

    def test_minimum(self):
        with pytest.raises(UnsupportedCardinality):
            default_anchors(3)


class TestMinPairwiseAngle:
    def test_octahedron(self):
        np.testing.assert_allclose(min_pairwise_angle(platonic_anchors(6)), np.pi / 2, atol=1e-12)

    def test_tetrahedron(self):
        np.testing.assert_allclose(
            min_pairwise_angle(platonic_anchors(4)), np.arccos(-1.0 / 3.0), atol=1e-12
        )

    def test_circle_7(self):
        np.testing.assert_allclose(min_pairwise_angle(circle_anchors(7)), 2 * np.pi / 7, atol=1e-12)

    def test_coincident_anchors_rejected(self):
        coords = np.array([(1.0, 0, 0), (1.0, 0, 0), (0, 1.0, 0), (0, 0, 1.0)])
        with pytest.raises(DegenerateSet):
            min_pairwise_angle(coords)

    def test_min_angle_dominance_over_circle(self):
        for p in range(4, 101):
            assert min_pairwise_angle(default_anchors(p)) > 2 * np.pi / p, f"p={p}"


class TestAnchorSetInvariants:
    def test_rejects_non_unit(self):
        with pytest.raises(DegenerateSet):
            AnchorSet(np.array([(2.0, 0, 0), (0, 1.0, 0), (0, 0, 1.0), (-1.0, 0, 0)]), "platonic")

    def test_rejects_duplicates(self):
        with pytest.raises(DegenerateSet):
            AnchorSet(np.array([(1.0, 0, 0), (1.0, 0, 0), (0, 1.0, 0), (0, 0, 1.0)]), "platonic")

    def test_rejects_tiny_3d_sets(self):
        coords = np.array([(1.0, 0, 0), (0, 1.0, 0), (0, 0, 1.0)])
        with pytest.raises(UnsupportedCardinality):
            AnchorSet(coords, "platonic")
