"""Anchor-point sets on the unit sphere (3D) and unit circle (2D).

Exactly equi-spaced spherical sets exist only for the vertex counts of the
five regular polyhedra (p in {4, 6, 8, 12, 20}); every other count gets an
approximately equi-spaced golden-angle spiral (Fibonacci lattice). Anchor
order is part of the contract: projections are order-sensitive, so each
generator emits a frozen, documented ordering.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import DegenerateSet, UnsupportedCardinality

GOLDEN_RATIO = (1.0 + np.sqrt(5.0)) / 2.0

PLATONIC_CARDINALITIES = (4, 6, 8, 12, 20)

# Keyed on vertex count; the 12-point set is the icosahedron's vertices and
# the 20-point set the dodecahedron's.
_SOLID_NAMES = {
    4: "tetrahedron",
    6: "octahedron",
    8: "cube",
    12: "icosahedron",
    20: "dodecahedron",
}


@dataclass(frozen=True)
class AnchorSet:
    """Ordered unit vectors serving as the columns of a projection matrix.

    ``coords`` is a (p, d) array with d in {2, 3}; every row has unit norm
    and rows are pairwise distinct. ``method`` records the generator
    ("platonic", "fibonacci" or "circle"); ``solid`` names the polyhedron
    for platonic sets.
    """

    coords: np.ndarray
    method: str
    solid: str | None = None

    def __post_init__(self):
        coords = np.asarray(self.coords, dtype=float)
        object.__setattr__(self, "coords", coords)
        if coords.ndim != 2 or coords.shape[1] not in (2, 3):
            raise DegenerateSet("anchor coordinates must form a (p, 2) or (p, 3) array")
        p, dim = coords.shape
        minimum = 3 if dim == 2 else 4
        if p < minimum:
            raise UnsupportedCardinality(f"need at least {minimum} anchors in {dim}D, got {p}")
        norms = np.linalg.norm(coords, axis=1)
        if np.abs(norms - 1.0).max() > 1e-12:
            raise DegenerateSet("anchors must have unit norm within 1e-12")
        if _min_pairwise_distance(coords) <= 1e-12:
            raise DegenerateSet("two anchors coincide within 1e-12")

    @property
    def p(self) -> int:
        return self.coords.shape[0]

    @property
    def dim(self) -> int:
        return self.coords.shape[1]


def _min_pairwise_distance(coords: np.ndarray) -> float:
    diff = coords[:, None, :] - coords[None, :, :]
    dist = np.linalg.norm(diff, axis=-1)
    iu = np.triu_indices(len(coords), 1)
    return float(dist[iu].min())


def _signed_group(template, nonzero_slots):
    """Expand +/- signs on two slots of a coordinate template, + before -."""
    rows = []
    for s1, s2 in itertools.product((1.0, -1.0), repeat=2):
        row = list(template)
        row[nonzero_slots[0]] *= s1
        row[nonzero_slots[1]] *= s2
        rows.append(row)
    return rows


def _tetrahedron() -> np.ndarray:
    return np.array(
        [(1, 1, 1), (1, -1, -1), (-1, 1, -1), (-1, -1, 1)], dtype=float
    ) / np.sqrt(3.0)


def _octahedron() -> np.ndarray:
    return np.array(
        [(1, 0, 0), (-1, 0, 0), (0, 1, 0), (0, -1, 0), (0, 0, 1), (0, 0, -1)],
        dtype=float,
    )


def _cube() -> np.ndarray:
    rows = list(itertools.product((1.0, -1.0), repeat=3))
    return np.array(rows) / np.sqrt(3.0)


def _icosahedron() -> np.ndarray:
    f = GOLDEN_RATIO
    rows = []
    rows += _signed_group((0.0, 1.0, f), (1, 2))
    rows += _signed_group((1.0, f, 0.0), (0, 1))
    rows += _signed_group((f, 0.0, 1.0), (0, 2))
    return np.array(rows) / np.sqrt(1.0 + f * f)


def _dodecahedron() -> np.ndarray:
    f = GOLDEN_RATIO
    g = 1.0 / f
    rows = [list(s) for s in itertools.product((1.0, -1.0), repeat=3)]
    rows += _signed_group((0.0, g, f), (1, 2))
    rows += _signed_group((g, f, 0.0), (0, 1))
    rows += _signed_group((f, 0.0, g), (0, 2))
    return np.array(rows) / np.sqrt(3.0)


_PLATONIC_BUILDERS = {
    4: _tetrahedron,
    6: _octahedron,
    8: _cube,
    12: _icosahedron,
    20: _dodecahedron,
}

# Known off-diagonal dot-product values for each vertex set (unit vectors).
PLATONIC_DOT_SPECTRA = {
    4: (-1.0 / 3.0,),
    6: (0.0, -1.0),
    8: (1.0 / 3.0, -1.0 / 3.0, -1.0),
    12: (1.0 / np.sqrt(5.0), -1.0 / np.sqrt(5.0), -1.0),
    20: (np.sqrt(5.0) / 3.0, 1.0 / 3.0, -1.0 / 3.0, -np.sqrt(5.0) / 3.0, -1.0),
}


def platonic_anchors(p: int) -> AnchorSet:
    """Vertex set of the regular polyhedron with p vertices, unit-normalized.

    Supported counts: 4 (tetrahedron), 6 (octahedron), 8 (cube),
    12 (icosahedron), 20 (dodecahedron).
    """
    if p not in _PLATONIC_BUILDERS:
        raise UnsupportedCardinality(
            f"no regular polyhedron has {p} vertices; supported: {PLATONIC_CARDINALITIES}"
        )
    return AnchorSet(_PLATONIC_BUILDERS[p](), method="platonic", solid=_SOLID_NAMES[p])


def fibonacci_anchors(p: int) -> AnchorSet:
    """Golden-angle spiral of p approximately equi-spaced points on the sphere.

    Point j (1-based) sits at height z_j = (2j-1)/p - 1 and longitude
    2*pi*j/phi, with the in-plane radius sqrt(1 - z_j^2), so every point is
    exactly unit-norm and the heights form an arithmetic progression.
    """
    if p < 4:
        raise UnsupportedCardinality(f"spherical anchor sets need p >= 4, got {p}")
    j = np.arange(1, p + 1, dtype=float)
    z = (2.0 * j - 1.0) / p - 1.0
    theta = 2.0 * np.pi * j / GOLDEN_RATIO
    r = np.sqrt(1.0 - z * z)
    coords = np.column_stack([np.cos(theta) * r, np.sin(theta) * r, z])
    return AnchorSet(coords, method="fibonacci")


def circle_anchors(p: int) -> AnchorSet:
    """p equally spaced points on the unit circle, starting at (1, 0)."""
    if p < 3:
        raise UnsupportedCardinality(f"circular anchor sets need p >= 3, got {p}")
    angles = 2.0 * np.pi * np.arange(p, dtype=float) / p
    coords = np.column_stack([np.cos(angles), np.sin(angles)])
    return AnchorSet(coords, method="circle")


def default_anchors(p: int, force_fibonacci: bool = False) -> AnchorSet:
    """Spherical anchors for p features: exact polyhedral vertices when they
    exist, the Fibonacci spiral otherwise (or always, when forced)."""
    if p < 4:
        raise UnsupportedCardinality(f"spherical anchor sets need p >= 4, got {p}")
    if not force_fibonacci and p in _PLATONIC_BUILDERS:
        return platonic_anchors(p)
    return fibonacci_anchors(p)


def min_pairwise_angle(anchors: AnchorSet | np.ndarray) -> float:
    """Smallest angle in radians between any two anchors of the set."""
    coords = anchors.coords if isinstance(anchors, AnchorSet) else np.asarray(anchors, float)
    if _min_pairwise_distance(coords) <= 1e-12:
        raise DegenerateSet("two anchors coincide within 1e-12")
    gram = np.clip(coords @ coords.T, -1.0, 1.0)
    iu = np.triu_indices(len(coords), 1)
    return float(np.arccos(gram[iu].max()))
