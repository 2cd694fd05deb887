"""Fully three-dimensional radial visualization toolkit.

Generates (approximately) equi-spaced anchor points on the sphere, projects
multivariate and compositional data into the unit ball, quantifies class
separability with Monte-Carlo overlap matrices, simulates labeled mixtures
at a prescribed generalized overlap, and exports interactive 3D scenes.
"""

from .anchors import (
    AnchorSet,
    GOLDEN_RATIO,
    PLATONIC_CARDINALITIES,
    circle_anchors,
    default_anchors,
    fibonacci_anchors,
    min_pairwise_angle,
    platonic_anchors,
)
from .dataio import load_csv, save_csv
from .overlap import (
    GaussianComponent,
    OverlapMatrix,
    fit_components,
    generalized_overlap,
    heatmap_export,
    overlap_matrix,
    pairwise_overlap,
)
from .projection import (
    DataSet,
    NormalizationRecord,
    Projection,
    minmax_normalize,
    project,
    project_dataset,
    spring_residual,
    viz3d_project,
)
from .scene import build_scene, export_html, load_scene, reproject_points, validate_scene
from .simulate import SimSpec, rescale_components, simulate_mixture

__version__ = "0.1.0"

__all__ = [
    "AnchorSet",
    "DataSet",
    "GaussianComponent",
    "GOLDEN_RATIO",
    "NormalizationRecord",
    "OverlapMatrix",
    "PLATONIC_CARDINALITIES",
    "Projection",
    "SimSpec",
    "build_scene",
    "circle_anchors",
    "default_anchors",
    "export_html",
    "fibonacci_anchors",
    "fit_components",
    "generalized_overlap",
    "heatmap_export",
    "load_csv",
    "load_scene",
    "min_pairwise_angle",
    "minmax_normalize",
    "overlap_matrix",
    "pairwise_overlap",
    "platonic_anchors",
    "project",
    "project_dataset",
    "reproject_points",
    "rescale_components",
    "save_csv",
    "simulate_mixture",
    "spring_residual",
    "validate_scene",
    "viz3d_project",
]
