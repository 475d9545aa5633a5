"""Symmetric eigendecomposition, |lambda|-ordered truncation, and spectral norm.

The eigensolver is LAPACK's symmetric driver (Householder tridiagonalization
plus QR-type iteration) via numpy. On top of it this module pins the
conventions the clustering pipelines rely on for reproducibility: a
deterministic eigenvector sign (first nonzero component positive) and a fixed
tie-break when eigenvalues share the same magnitude.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .validation import as_matrix, check_symmetric


@dataclass(frozen=True)
class EigenPairs:
    """Full spectrum of a symmetric matrix: values[i] pairs with vectors[:, i]."""

    values: np.ndarray
    vectors: np.ndarray


class PowerIterationError(RuntimeError):
    """Power iteration failed to converge; `estimate` carries the best value seen."""

    def __init__(self, message: str, estimate: float):
        super().__init__(message)
        self.estimate = estimate


def _fix_signs(vectors: np.ndarray, zero_tol: float = 1e-12) -> np.ndarray:
    """Flip eigenvector signs so the first non-negligible component is positive."""
    v = vectors.copy()
    for j in range(v.shape[1]):
        col = v[:, j]
        nz = np.nonzero(np.abs(col) > zero_tol)[0]
        lead = nz[0] if nz.size else int(np.argmax(np.abs(col)))
        if col[lead] < 0:
            v[:, j] = -col
    return v


def sym_eigen(a: np.ndarray) -> EigenPairs:
    """Full eigendecomposition of a symmetric matrix (symmetrized as (A+A^T)/2)."""
    s = check_symmetric(a)
    values, vectors = np.linalg.eigh(s)
    return EigenPairs(values=values, vectors=_fix_signs(vectors))


def top_by_abs(pairs: EigenPairs, r: int):
    """The r eigenpairs of largest |lambda|, sorted by |lambda| descending.

    Ties in |lambda| are broken by signed value descending, then by the pair's
    index in `pairs`, so truncation is deterministic.
    """
    n = pairs.values.shape[0]
    if not 1 <= r <= n:
        raise ValueError(f"r must be in [1, {n}], got {r}")
    vals = pairs.values
    # lexsort uses the last key as primary; negate for descending order
    order = np.lexsort((np.arange(n), -vals, -np.abs(vals)))[:r]
    return vals[order], pairs.vectors[:, order]


def best_rank_r(a: np.ndarray, r: int) -> np.ndarray:
    """Best rank-r approximation of a symmetric matrix by |lambda|-truncation."""
    vals, vecs = top_by_abs(sym_eigen(a), r)
    return (vecs * vals) @ vecs.T


def spectral_norm(a: np.ndarray, tol: float = 1e-10, max_iter: int = 10_000) -> float:
    """Largest singular value via power iteration on A^T A.

    Deterministic start vector (normalized all-ones plus a fixed perturbation);
    converged when the Rayleigh estimate stagnates to relative `tol`.
    """
    a = as_matrix(a)
    n, m = a.shape
    v = np.ones(m) + 1e-3 * np.sin(np.arange(1, m + 1))
    v /= np.linalg.norm(v)
    sigma = 0.0
    for _ in range(max_iter):
        w = a @ v
        nw = np.linalg.norm(w)
        if nw == 0.0:
            return 0.0
        u = a.T @ w
        nu = np.linalg.norm(u)
        sigma_new = nu / nw  # |A^T A v| / |A v| -> sigma_max
        v = u / nu
        if abs(sigma_new - sigma) <= tol * max(sigma_new, np.finfo(float).tiny):
            return float(sigma_new)
        sigma = sigma_new
    raise PowerIterationError(
        f"power iteration did not converge in {max_iter} iterations", float(sigma)
    )
