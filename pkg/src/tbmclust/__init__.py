"""Sparse tensor block models: sampling, spectral clustering, phase-transition sweeps."""

from .algorithms import (
    ALGORITHM_NAMES,
    UnknownAlgorithmError,
    aggregate_svd_cluster,
    cluster_tensor,
    hollow_svd_cluster,
    hsc_cluster,
    vanilla_svd_cluster,
)
from .bounds import (
    bennett_beta,
    kmeans_misclass_bound,
    kmeans_size_hypothesis,
    separation_lower_bound,
    tail_bounds,
)
from .cluster import ClusterAssignment, kmeans_plus_plus, misclassification
from .estimators import TensorBlockClustering
from .experiments import (
    BoundaryFit,
    CellResult,
    SweepGrid,
    embedding_study,
    fit_boundary,
    run_sweep,
)
from .linalg import EigenPairs, best_rank_r, spectral_norm, sym_eigen, top_by_abs
from .model import (
    ModelDiagnostics,
    TbmSpec,
    aggregate_spec,
    diagnostics,
    sample,
    signal_tensor,
)
from .tensor import (
    aggregate_modes,
    elementwise_product,
    frobenius_norm,
    matricize,
    mode_k_product,
    tucker_assemble,
)

__version__ = "0.1.0"

__all__ = [
    "ALGORITHM_NAMES",
    "BoundaryFit",
    "CellResult",
    "ClusterAssignment",
    "EigenPairs",
    "ModelDiagnostics",
    "SweepGrid",
    "TbmSpec",
    "TensorBlockClustering",
    "UnknownAlgorithmError",
    "aggregate_modes",
    "aggregate_spec",
    "aggregate_svd_cluster",
    "bennett_beta",
    "best_rank_r",
    "cluster_tensor",
    "diagnostics",
    "elementwise_product",
    "embedding_study",
    "fit_boundary",
    "frobenius_norm",
    "hollow_svd_cluster",
    "hsc_cluster",
    "kmeans_misclass_bound",
    "kmeans_plus_plus",
    "kmeans_size_hypothesis",
    "matricize",
    "misclassification",
    "mode_k_product",
    "run_sweep",
    "sample",
    "separation_lower_bound",
    "signal_tensor",
    "spectral_norm",
    "sym_eigen",
    "tail_bounds",
    "top_by_abs",
    "tucker_assemble",
    "vanilla_svd_cluster",
]
