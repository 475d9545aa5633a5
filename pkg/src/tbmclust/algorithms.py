"""The four tensor clustering pipelines.

All pipelines reduce one mode of a data tensor to an r-dimensional spectral
embedding and cluster its rows with k-means++:

* hollow-svd: Gram matrix of the matricization with the diagonal zeroed and
  heavy rows/columns trimmed, then a truncated eigendecomposition.
* vanilla-svd: the same without trimming and diagonal resetting.
* hsc: a single higher-order refinement pass; the initial factor projects the
  remaining modes before the clustered mode's factor is recomputed.
* aggregate-svd: sums the third mode into a matrix, trims heavy rows/columns,
  and clusters a best rank-r approximation (3-way tensors only).

Every pipeline is deterministic given (tensor, parameters, seed).
"""

from __future__ import annotations

import numpy as np

from .cluster import ClusterAssignment, kmeans_plus_plus
from .linalg import sym_eigen, top_by_abs
from .tensor import matricize, mode_k_product
from .validation import as_tensor, check_mode

ALGORITHM_NAMES = ("hollow-svd", "vanilla-svd", "hsc", "aggregate-svd")


class UnknownAlgorithmError(ValueError):
    def __init__(self, name):
        super().__init__(
            f"unknown algorithm {name!r}; valid names: {', '.join(ALGORITHM_NAMES)}"
        )


def _effective_rho(y: np.ndarray, rho) -> float:
    # fallback density estimate when the generating rho is not known
    return float(rho) if rho is not None else float(np.mean(np.abs(y)))


def _embed_top_r(a: np.ndarray, r: int) -> np.ndarray:
    """Rows of U_r Lambda_r for the r leading |lambda| eigenpairs of `a`."""
    vals, vecs = top_by_abs(sym_eigen(a), r)
    return vecs * vals


def hollow_gram(y: np.ndarray, mode: int, trim_threshold=None, c_trim=3.0, rho=None):
    """Trimmed hollow Gram matrix of the mode-k matricization.

    Zeroes the diagonal of Y Y^T, then zeroes row i and column j whenever the
    corresponding row/column sum of the hollow Gram of |Y| exceeds the
    threshold (default c_trim * rho^2 * n_1...n_d).
    """
    y = as_tensor(y)
    if trim_threshold is None:
        trim_threshold = c_trim * _effective_rho(y, rho) ** 2 * y.size
    m = matricize(y, mode)
    a = m @ m.T
    np.fill_diagonal(a, 0.0)
    if m.min() >= 0:  # |Y| = Y, so the absolute-value Gram coincides
        a_bar = a
    else:
        abs_m = np.abs(m)
        a_bar = abs_m @ abs_m.T
        np.fill_diagonal(a_bar, 0.0)
    heavy = (a_bar.sum(axis=1) > trim_threshold) | (a_bar.sum(axis=0) > trim_threshold)
    a[heavy, :] = 0.0
    a[:, heavy] = 0.0
    return a


def hollow_svd_embedding(
    y, mode: int, n_clusters: int, trim_threshold=None, c_trim=3.0, rho=None
) -> np.ndarray:
    a = hollow_gram(y, mode, trim_threshold=trim_threshold, c_trim=c_trim, rho=rho)
    return _embed_top_r(a, n_clusters)


def hollow_svd_cluster(
    y,
    mode: int,
    n_clusters: int,
    *,
    trim_threshold=None,
    c_trim=3.0,
    rho=None,
    seed: int = 0,
    restarts: int = 20,
) -> ClusterAssignment:
    emb = hollow_svd_embedding(
        y, mode, n_clusters, trim_threshold=trim_threshold, c_trim=c_trim, rho=rho
    )
    return kmeans_plus_plus(emb, n_clusters, seed=seed, restarts=restarts)


def vanilla_svd_embedding(y, mode: int, n_clusters: int) -> np.ndarray:
    m = matricize(as_tensor(y), mode)
    return _embed_top_r(m @ m.T, n_clusters)


def vanilla_svd_cluster(
    y, mode: int, n_clusters: int, *, seed: int = 0, restarts: int = 20
) -> ClusterAssignment:
    emb = vanilla_svd_embedding(y, mode, n_clusters)
    return kmeans_plus_plus(emb, n_clusters, seed=seed, restarts=restarts)


def hsc_embedding(
    y,
    mode: int,
    n_clusters: int,
    init: str = "vanilla-svd",
    trim_threshold=None,
    c_trim=3.0,
    rho=None,
) -> np.ndarray:
    """One higher-order refinement of a spectral factor, for symmetric settings.

    Computes an initial n x r factor from the chosen mode's Gram matrix (plain
    for init="vanilla-svd", trimmed hollow for init="hollow-svd"), projects
    every other mode onto it, and re-extracts the clustered mode's factor from
    the projected matricization. Returns that factor scaled by the projected
    matricization's singular values. Requires all extents equal.
    """
    y = as_tensor(y)
    k = check_mode(y, mode)
    n = y.shape[k]
    if any(dim != n for dim in y.shape):
        raise ValueError("hsc requires equal extents on all modes")
    if init == "vanilla-svd":
        m0 = matricize(y, mode)
        a0 = m0 @ m0.T
    elif init == "hollow-svd":
        a0 = hollow_gram(y, mode, trim_threshold=trim_threshold, c_trim=c_trim, rho=rho)
    else:
        raise ValueError(f"unknown hsc init {init!r}")
    _, u0 = top_by_abs(sym_eigen(a0), n_clusters)
    w = y
    for j in range(1, y.ndim + 1):
        if j != mode:
            w = mode_k_product(w, u0.T, j)
    b = matricize(w, mode)
    # b = U S V^T with tiny column count; embedding U S = b V
    _, v = top_by_abs(sym_eigen(b.T @ b), n_clusters)
    return b @ v


def hsc_cluster(
    y,
    mode: int,
    n_clusters: int,
    *,
    init: str = "vanilla-svd",
    trim_threshold=None,
    c_trim=3.0,
    rho=None,
    seed: int = 0,
    restarts: int = 20,
) -> ClusterAssignment:
    emb = hsc_embedding(
        y,
        mode,
        n_clusters,
        init=init,
        trim_threshold=trim_threshold,
        c_trim=c_trim,
        rho=rho,
    )
    return kmeans_plus_plus(emb, n_clusters, seed=seed, restarts=restarts)


def aggregate_matrix(y, trim_threshold=None, c_trim=3.0, rho=None) -> np.ndarray:
    """Third-mode sum of a 3-way tensor with heavy rows/columns removed.

    An index is removed (its row and column zeroed) when its row or column
    L1 norm exceeds the threshold (default c_trim * rho * n^2 in the
    equal-extent setting).
    """
    y = as_tensor(y)
    if y.ndim != 3:
        raise ValueError(f"aggregate-svd requires a 3-way tensor, got order {y.ndim}")
    n1, n2, n3 = y.shape
    if n1 != n2:
        raise ValueError("aggregate-svd requires equal first and second extents")
    a = y.sum(axis=2)
    if trim_threshold is None:
        trim_threshold = c_trim * _effective_rho(y, rho) * n2 * n3
    abs_a = np.abs(a)
    heavy = (abs_a.sum(axis=1) > trim_threshold) | (abs_a.sum(axis=0) > trim_threshold)
    a[heavy, :] = 0.0
    a[:, heavy] = 0.0
    return a


def aggregate_svd_embedding(
    y, n_clusters: int, trim_threshold=None, c_trim=3.0, rho=None
) -> np.ndarray:
    a = aggregate_matrix(y, trim_threshold=trim_threshold, c_trim=c_trim, rho=rho)
    return _embed_top_r(0.5 * (a + a.T), n_clusters)


def aggregate_svd_cluster(
    y,
    n_clusters: int,
    *,
    trim_threshold=None,
    c_trim=3.0,
    rho=None,
    seed: int = 0,
    restarts: int = 20,
) -> ClusterAssignment:
    emb = aggregate_svd_embedding(
        y, n_clusters, trim_threshold=trim_threshold, c_trim=c_trim, rho=rho
    )
    return kmeans_plus_plus(emb, n_clusters, seed=seed, restarts=restarts)


def cluster_tensor(
    y,
    algorithm: str,
    mode: int = 1,
    n_clusters: int = 2,
    *,
    rho=None,
    trim_threshold=None,
    c_trim: float = 3.0,
    hsc_init: str = "vanilla-svd",
    seed: int = 0,
    restarts: int = 20,
) -> ClusterAssignment:
    """Run one of the named pipelines on a data tensor."""
    if algorithm == "hollow-svd":
        return hollow_svd_cluster(
            y,
            mode,
            n_clusters,
            trim_threshold=trim_threshold,
            c_trim=c_trim,
            rho=rho,
            seed=seed,
            restarts=restarts,
        )
    if algorithm == "vanilla-svd":
        return vanilla_svd_cluster(y, mode, n_clusters, seed=seed, restarts=restarts)
    if algorithm == "hsc":
        return hsc_cluster(
            y,
            mode,
            n_clusters,
            init=hsc_init,
            trim_threshold=trim_threshold,
            c_trim=c_trim,
            rho=rho,
            seed=seed,
            restarts=restarts,
        )
    if algorithm == "aggregate-svd":
        return aggregate_svd_cluster(
            y,
            n_clusters,
            trim_threshold=trim_threshold,
            c_trim=c_trim,
            rho=rho,
            seed=seed,
            restarts=restarts,
        )
    raise UnknownAlgorithmError(algorithm)
