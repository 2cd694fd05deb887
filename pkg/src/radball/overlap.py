"""Pairwise misclassification overlap between Gaussian class models.

For groups i and j, omega_{j|i} is the probability that a draw from group i
is more plausible under group j's weighted density; the symmetrized overlap
omega_ij = omega_{j|i} + omega_{i|j} fills a K x K matrix whose lower
triangle drives the separability heatmap. A scalar summary (the generalized
overlap) condenses the matrix to one clustering-complexity number.

Estimates are Monte Carlo with deterministic per-pair sub-seeding, so any
evaluation order (or parallel schedule) yields identical results.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.linalg import solve_triangular

from .errors import DimensionMismatch, InvalidComponent, SingleClass
from .projection import DataSet

RIDGE_EPSILON = 1e-8


@dataclass(frozen=True)
class GaussianComponent:
    """One class model: mean vector, SPD covariance, mixing weight."""

    mean: np.ndarray
    covariance: np.ndarray
    weight: float

    def __post_init__(self):
        mean = np.asarray(self.mean, dtype=float).reshape(-1)
        cov = np.asarray(self.covariance, dtype=float)
        if cov.shape != (mean.size, mean.size):
            raise InvalidComponent(f"covariance {cov.shape} does not match mean of length {mean.size}")
        if np.abs(cov - cov.T).max() > 1e-10:
            raise InvalidComponent("covariance not symmetric within 1e-10")
        try:
            np.linalg.cholesky(cov)
        except np.linalg.LinAlgError:
            raise InvalidComponent("covariance not positive definite") from None
        if not 0.0 < self.weight <= 1.0:
            raise InvalidComponent(f"weight {self.weight} outside (0, 1]")
        object.__setattr__(self, "mean", mean)
        object.__setattr__(self, "covariance", cov)

    @property
    def dim(self) -> int:
        return self.mean.size


@dataclass(frozen=True)
class OverlapMatrix:
    """Symmetric zero-diagonal matrix of pairwise overlaps omega_ij."""

    omega: np.ndarray
    n_draws: int
    seed: int

    def __post_init__(self):
        om = np.asarray(self.omega, dtype=float)
        if om.ndim != 2 or om.shape[0] != om.shape[1]:
            raise DimensionMismatch("overlap matrix must be square")
        if np.any(np.diag(om) != 0.0):
            raise InvalidComponent("overlap matrix diagonal must be zero")
        if np.abs(om - om.T).max() != 0.0:
            raise InvalidComponent("overlap matrix must be symmetric")
        if om.min() < 0.0 or om.max() > 2.0:
            raise InvalidComponent("overlap entries must lie in [0, 2]")
        object.__setattr__(self, "omega", om)

    @property
    def n_classes(self) -> int:
        return self.omega.shape[0]


def fit_components(
    data: DataSet | np.ndarray,
    labels=None,
    ridge_epsilon: float = RIDGE_EPSILON,
) -> list[GaussianComponent]:
    """Fit one Gaussian per class: sample mean, maximum-likelihood covariance
    (divisor n_k) and weight n_k / n.

    Accepts a labeled DataSet or a plain matrix plus labels. Classes are
    ordered by sorted label. Rank-deficient covariances get a ridge
    eps * trace(S)/p * I, doubled until the Cholesky succeeds.
    """
    if isinstance(data, DataSet):
        values = data.values
        labels = data.labels if labels is None else labels
    else:
        values = np.asarray(data, dtype=float)
    if labels is None:
        raise SingleClass("labels are required to fit per-class components")
    labels = np.asarray([str(c) for c in labels])
    classes = np.unique(labels)
    if classes.size < 2:
        raise SingleClass(f"need at least 2 classes, got {classes.size}")
    n, p = values.shape
    components = []
    for cls in classes:
        block = values[labels == cls]
        mean = block.mean(axis=0)
        centered = block - mean
        cov = centered.T @ centered / block.shape[0]
        cov = (cov + cov.T) / 2.0
        cov = _ensure_spd(cov, ridge_epsilon)
        components.append(GaussianComponent(mean, cov, block.shape[0] / n))
    return components


def _ensure_spd(cov: np.ndarray, epsilon: float) -> np.ndarray:
    scale = np.trace(cov) / cov.shape[0]
    if scale <= 0.0:
        scale = 1.0
    eps = epsilon
    candidate = cov
    for _ in range(64):
        try:
            np.linalg.cholesky(candidate)
            return candidate
        except np.linalg.LinAlgError:
            candidate = cov + eps * scale * np.eye(cov.shape[0])
            eps *= 2.0
    raise InvalidComponent("covariance could not be regularized to SPD")


def _log_density(x: np.ndarray, mean: np.ndarray, chol: np.ndarray) -> np.ndarray:
    """Gaussian log-density of the rows of x, given a Cholesky factor."""
    p = mean.size
    dev = solve_triangular(chol, (x - mean).T, lower=True)
    quad = np.einsum("ij,ij->j", dev, dev)
    return -0.5 * (p * np.log(2.0 * np.pi) + quad) - np.log(np.diag(chol)).sum()


def _one_sided_overlap(src: GaussianComponent, dst: GaussianComponent, n_draws: int, rng) -> float:
    chol_src = np.linalg.cholesky(src.covariance)
    chol_dst = np.linalg.cholesky(dst.covariance)
    z = rng.standard_normal((n_draws, src.dim))
    coin = rng.random(n_draws)
    x = src.mean + z @ chol_src.T
    diff = (np.log(dst.weight) + _log_density(x, dst.mean, chol_dst)) - (
        np.log(src.weight) + _log_density(x, src.mean, chol_src)
    )
    # Exact density ties (e.g. identical components) are broken by a fair coin.
    misclassified = (diff > 0.0) | ((diff == 0.0) & (coin < 0.5))
    return float(misclassified.mean())


def pairwise_overlap(
    comp_i: GaussianComponent,
    comp_j: GaussianComponent,
    n_draws: int,
    seed: int,
) -> tuple[float, float]:
    """Monte-Carlo misclassification rates (omega_{j|i}, omega_{i|j}).

    omega_{j|i} draws n_draws samples from component i and counts how often
    weight_j * density_j exceeds weight_i * density_i (log-domain comparison).
    Deterministic for a given seed.
    """
    if comp_i.dim != comp_j.dim:
        raise DimensionMismatch(f"components of dimension {comp_i.dim} vs {comp_j.dim}")
    if n_draws < 1:
        raise InvalidComponent(f"n_draws must be >= 1, got {n_draws}")
    stream_ij, stream_ji = np.random.SeedSequence(seed).spawn(2)
    omega_j_given_i = _one_sided_overlap(comp_i, comp_j, n_draws, np.random.default_rng(stream_ij))
    omega_i_given_j = _one_sided_overlap(comp_j, comp_i, n_draws, np.random.default_rng(stream_ji))
    return omega_j_given_i, omega_i_given_j


def pair_subseed(seed: int, i: int, j: int) -> int:
    """Deterministic sub-seed for the (i, j) pair, independent of evaluation order."""
    return int(np.random.SeedSequence([int(seed), int(i), int(j)]).generate_state(1, np.uint64)[0])


def overlap_matrix(components, n_draws: int = 100_000, seed: int = 0) -> OverlapMatrix:
    """Full symmetric overlap matrix omega_ij = omega_{j|i} + omega_{i|j}.

    Weights should sum to 1; each pair uses its own sub-seed derived from
    (seed, i, j), so results do not depend on evaluation order.
    """
    components = list(components)
    K = len(components)
    if K < 2:
        raise SingleClass(f"need at least 2 components, got {K}")
    total_weight = sum(c.weight for c in components)
    if abs(total_weight - 1.0) > 1e-9:
        raise InvalidComponent(f"component weights sum to {total_weight}, expected 1")
    omega = np.zeros((K, K))
    for i in range(K):
        for j in range(i + 1, K):
            oji, oij = pairwise_overlap(components[i], components[j], n_draws, pair_subseed(seed, i, j))
            omega[i, j] = omega[j, i] = oji + oij
    return OverlapMatrix(omega, n_draws, seed)


def generalized_overlap(omega: OverlapMatrix | np.ndarray) -> float:
    """Scalar clustering-complexity summary (lambda_max(Omega_bar) - 1) / (K - 1),
    where Omega_bar is the overlap matrix with unit diagonal. Zero for fully
    separated classes; one when all pairs overlap completely."""
    om = omega.omega if isinstance(omega, OverlapMatrix) else np.asarray(omega, dtype=float)
    K = om.shape[0]
    if K < 2:
        raise SingleClass("generalized overlap needs at least 2 classes")
    bar = om.copy()
    np.fill_diagonal(bar, 1.0)
    return float((np.linalg.eigvalsh(bar)[-1] - 1.0) / (K - 1))


def heatmap_export(omega: OverlapMatrix | np.ndarray, labels) -> dict:
    """Strict lower triangle (i > j) of the overlap matrix as heatmap rows.

    Each row carries (class_i, class_j, omega, color_value) with color_value
    = omega / max_omega (all zeros when the matrix is identically zero).
    """
    om = omega.omega if isinstance(omega, OverlapMatrix) else np.asarray(omega, dtype=float)
    labels = [str(c) for c in labels]
    K = om.shape[0]
    if len(labels) != K:
        raise DimensionMismatch(f"{len(labels)} labels for {K} classes")
    max_omega = float(om.max())
    rows = []
    for i in range(1, K):
        for j in range(i):
            value = float(om[i, j])
            rows.append(
                {
                    "class_i": labels[i],
                    "class_j": labels[j],
                    "omega": value,
                    "color_value": value / max_omega if max_omega > 0.0 else 0.0,
                }
            )
    return {"classes": labels, "rows": rows, "max_omega": max_omega}
