"""Radial projection of multivariate data into the unit ball.

The map sends a nonnegative vector x to U x / sum(x), where the columns of
U are unit anchor points; the image is the spring equilibrium of anchors
pulling with constants x_j. With circle anchors this is the classic 2D
radial display; with spherical anchors it fills the unit ball.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .anchors import AnchorSet, circle_anchors
from .errors import DimensionMismatch, InvalidDataset, NegativeInput

METHODS = ("radviz3d", "radviz2d", "viz3d")


@dataclass(frozen=True)
class DataSet:
    """An n x p numeric matrix with feature names, optional class labels
    and per-row identifiers."""

    values: np.ndarray
    feature_names: tuple[str, ...]
    labels: tuple[str, ...] | None = None
    row_ids: tuple[str, ...] = ()

    def __post_init__(self):
        values = np.asarray(self.values, dtype=float)
        if values.ndim != 2:
            raise InvalidDataset("values must be a 2D matrix")
        n, p = values.shape
        if n < 1:
            raise InvalidDataset("need at least one row")
        if p < 3:
            raise InvalidDataset(f"need at least 3 features, got {p}")
        if not np.isfinite(values).all():
            raise InvalidDataset("values contain NaN or Inf")
        names = tuple(str(f) for f in self.feature_names)
        if len(names) != p:
            raise InvalidDataset(f"{len(names)} feature names for {p} columns")
        if len(set(names)) != p:
            raise InvalidDataset("feature names must be unique")
        labels = None if self.labels is None else tuple(str(c) for c in self.labels)
        if labels is not None and len(labels) != n:
            raise InvalidDataset(f"{len(labels)} labels for {n} rows")
        row_ids = tuple(str(r) for r in self.row_ids) or tuple(f"r{i + 1}" for i in range(n))
        if len(row_ids) != n:
            raise InvalidDataset(f"{len(row_ids)} row ids for {n} rows")
        object.__setattr__(self, "values", values)
        object.__setattr__(self, "feature_names", names)
        object.__setattr__(self, "labels", labels)
        object.__setattr__(self, "row_ids", row_ids)

    @property
    def n(self) -> int:
        return self.values.shape[0]

    @property
    def p(self) -> int:
        return self.values.shape[1]


@dataclass(frozen=True)
class NormalizationRecord:
    """Per-column min/max of the original data plus the indices of constant
    columns (mapped to 0.5 instead of 0/0)."""

    column_min: np.ndarray
    column_max: np.ndarray
    constant_columns: tuple[int, ...]

    def __post_init__(self):
        lo = np.asarray(self.column_min, dtype=float)
        hi = np.asarray(self.column_max, dtype=float)
        if lo.shape != hi.shape or lo.ndim != 1:
            raise InvalidDataset("column min/max must be 1D arrays of equal length")
        if np.any(lo > hi):
            raise InvalidDataset("column min exceeds max")
        constant = tuple(int(i) for i in self.constant_columns)
        if constant != tuple(int(i) for i in np.flatnonzero(lo == hi)):
            raise InvalidDataset("constant_columns must be exactly the min==max columns")
        object.__setattr__(self, "column_min", lo)
        object.__setattr__(self, "column_max", hi)
        object.__setattr__(self, "constant_columns", constant)


@dataclass(frozen=True)
class Projection:
    """Projected points plus everything needed to reproduce them."""

    points: np.ndarray
    anchor_set: AnchorSet
    normalization: NormalizationRecord | None
    method: str
    degenerate_rows: tuple[int, ...] = field(default_factory=tuple)

    def __post_init__(self):
        pts = np.asarray(self.points, dtype=float)
        object.__setattr__(self, "points", pts)
        object.__setattr__(self, "degenerate_rows", tuple(int(i) for i in self.degenerate_rows))
        if self.method not in METHODS:
            raise InvalidDataset(f"unknown projection method {self.method!r}")


def minmax_normalize(data: DataSet) -> tuple[DataSet, NormalizationRecord]:
    """Rescale every column affinely into [0, 1]; constant columns become 0.5.

    Returns the transformed dataset and a record of the original column
    ranges (constant columns flagged so callers may drop them).
    """
    lo = data.values.min(axis=0)
    hi = data.values.max(axis=0)
    constant = lo == hi
    span = np.where(constant, 1.0, hi - lo)
    values = (data.values - lo) / span
    values[:, constant] = 0.5
    record = NormalizationRecord(lo, hi, tuple(int(i) for i in np.flatnonzero(constant)))
    out = DataSet(values, data.feature_names, data.labels, data.row_ids)
    return out, record


def project(x: np.ndarray, anchors: AnchorSet) -> tuple[np.ndarray, bool]:
    """Project one nonnegative vector to U x / sum(x).

    Returns (point, degenerate): a zero-sum vector has no equilibrium, so it
    maps to the origin with the degenerate flag set. The point is always a
    convex combination of the anchors.
    """
    x = np.asarray(x, dtype=float)
    if x.ndim != 1 or x.shape[0] != anchors.p:
        raise DimensionMismatch(f"vector of length {x.shape} vs {anchors.p} anchors")
    if np.any(x < 0):
        raise NegativeInput("projection weights must be nonnegative; normalize first")
    total = x.sum()
    if total == 0.0:
        return np.zeros(anchors.dim), True
    return (anchors.coords.T @ x) / total, False


def project_matrix(values: np.ndarray, coords: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Row-wise radial projection of a nonnegative matrix; zero-sum rows go
    to the origin. Returns (points, zero_row_mask)."""
    sums = values.sum(axis=1)
    zero = sums == 0.0
    safe = np.where(zero, 1.0, sums)
    points = (values @ coords) / safe[:, None]
    points[zero] = 0.0
    return points, zero


def project_dataset(data: DataSet, anchors: AnchorSet, normalize: bool = True) -> Projection:
    """Project every row of a dataset; minmax-normalizes first by default.

    With ``normalize`` off the data must already be nonnegative (e.g.
    compositions); rows summing to zero map to the origin and are listed in
    ``degenerate_rows``.
    """
    if anchors.p != data.p:
        raise DimensionMismatch(f"{data.p} features vs {anchors.p} anchors")
    record = None
    if normalize:
        data, record = minmax_normalize(data)
    elif np.any(data.values < 0):
        i, j = np.argwhere(data.values < 0)[0]
        raise NegativeInput(
            f"negative entry at row {i + 1}, column {data.feature_names[j]!r}; "
            "use minmax normalization for signed data"
        )
    points, zero = project_matrix(data.values, anchors.coords)
    method = "radviz3d" if anchors.dim == 3 else "radviz2d"
    return Projection(points, anchors, record, method, tuple(np.flatnonzero(zero)))


def viz3d_project(data: DataSet, normalize: bool = True) -> Projection:
    """Circle projection for (y1, y2) with the row's mean attribute as y3.

    The in-plane coordinates come from equally spaced circle anchors; the
    third coordinate is the mean of the row's normalized attributes. Zero-sum
    rows map to the origin, like the radial projections.
    """
    anchors = circle_anchors(data.p)
    record = None
    if normalize:
        data, record = minmax_normalize(data)
    elif np.any(data.values < 0):
        raise NegativeInput("viz3d requires nonnegative data when normalization is off")
    plane, zero = project_matrix(data.values, anchors.coords)
    height = data.values.mean(axis=1)
    points = np.column_stack([plane, height])
    return Projection(points, anchors, record, "viz3d", tuple(np.flatnonzero(zero)))


def spring_residual(x: np.ndarray, y: np.ndarray, anchors: AnchorSet) -> np.ndarray:
    """Net spring force sum_j x_j (y - u_j); zero exactly at the projection."""
    x = np.asarray(x, dtype=float)
    y = np.asarray(y, dtype=float)
    if x.ndim != 1 or x.shape[0] != anchors.p:
        raise DimensionMismatch(f"vector of length {x.shape} vs {anchors.p} anchors")
    if y.shape != (anchors.dim,):
        raise DimensionMismatch(f"point of shape {y.shape} vs anchor dimension {anchors.dim}")
    return x.sum() * y - anchors.coords.T @ x
