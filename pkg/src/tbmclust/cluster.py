"""k-means++ seeding with Lloyd refinement, and permutation-minimized misclassification.

Labels are 1-based throughout, matching the membership vectors of the block
models in :mod:`tbmclust.model`.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations

import numpy as np
from scipy.optimize import linear_sum_assignment

from .rng import generator
from .validation import as_matrix, check_labels

# above this many clusters, exhaustive permutation search stops being trivially fast
_EXHAUSTIVE_R_MAX = 8


@dataclass(frozen=True)
class ClusterAssignment:
    """Clustering of n points into r clusters.

    labels: 1-based membership vector of length n.
    centroids: (r, p) centroid matrix.
    cost: sum of squared distances of each point to its assigned centroid.
    """

    labels: np.ndarray
    centroids: np.ndarray
    cost: float


def _nearest(points: np.ndarray, centroids: np.ndarray):
    d2 = ((points[:, None, :] - centroids[None, :, :]) ** 2).sum(axis=2)
    idx = np.argmin(d2, axis=1)
    return idx, d2[np.arange(points.shape[0]), idx]


def _seed_centroids(points: np.ndarray, r: int, rng: np.random.Generator) -> np.ndarray:
    """Greedy k-means++ seeding: D^2 sampling with best-of-few candidate draws."""
    n = points.shape[0]
    n_local_trials = 2 + int(np.log(r))
    centroids = np.empty((r, points.shape[1]))
    centroids[0] = points[rng.integers(n)]
    d2 = ((points - centroids[0]) ** 2).sum(axis=1)
    for j in range(1, r):
        total = d2.sum()
        if total > 0:
            candidates = rng.choice(n, size=n_local_trials, p=d2 / total)
        else:
            candidates = rng.integers(n, size=n_local_trials)
        best_d2, best_idx = None, None
        for idx in candidates:
            cand_d2 = np.minimum(d2, ((points - points[idx]) ** 2).sum(axis=1))
            if best_d2 is None or cand_d2.sum() < best_d2.sum():
                best_d2, best_idx = cand_d2, idx
        centroids[j] = points[best_idx]
        d2 = best_d2
    return centroids


def _lloyd(points, centroids, rng, max_iter, rel_tol):
    n = points.shape[0]
    r = centroids.shape[0]
    labels, d2 = _nearest(points, centroids)
    cost = float(d2.sum())
    for _ in range(max_iter):
        for j in range(r):
            mask = labels == j
            if mask.any():
                centroids[j] = points[mask].mean(axis=0)
            else:
                # re-seed an empty cluster at the point farthest from its centroid
                far = int(np.argmax(d2))
                centroids[j] = points[far]
                labels[far] = j
                d2[far] = 0.0
        new_labels, d2 = _nearest(points, centroids)
        new_cost = float(d2.sum())
        if new_cost > cost * (1 + 1e-12) + 1e-12:
            raise RuntimeError("Lloyd iteration increased the k-means cost")
        converged = np.array_equal(new_labels, labels) or (
            cost - new_cost < rel_tol * max(cost, np.finfo(float).tiny)
        )
        labels, cost = new_labels, new_cost
        if converged:
            break
    return labels, centroids, cost


def kmeans_plus_plus(
    points,
    r: int,
    seed: int,
    restarts: int = 20,
    max_iter: int = 300,
    rel_tol: float = 1e-10,
) -> ClusterAssignment:
    """Best-of-restarts k-means++ with Lloyd refinement.

    Deterministic given (points, r, seed): each restart draws from its own
    derived stream and ties in best cost go to the lowest restart index.
    """
    points = as_matrix(points, "points")
    n = points.shape[0]
    if not 1 <= r <= n:
        raise ValueError(f"r must be in [1, {n}], got {r}")
    if restarts < 1:
        raise ValueError("restarts must be >= 1")
    best = None
    for trial in range(restarts):
        rng = generator(seed, trial)
        centroids = _seed_centroids(points, r, rng)
        labels, centroids, cost = _lloyd(points, centroids, rng, max_iter, rel_tol)
        if best is None or cost < best[2]:
            best = (labels, centroids, cost)
        if best[2] == 0.0:
            break
    labels, centroids, cost = best
    return ClusterAssignment(labels=labels + 1, centroids=centroids, cost=cost)


def _confusion(z: np.ndarray, z_hat: np.ndarray, r: int) -> np.ndarray:
    c = np.zeros((r, r), dtype=np.int64)
    np.add.at(c, (z_hat - 1, z - 1), 1)
    return c


def misclassification(z, z_hat, r: int) -> float:
    """Fraction of mislabeled indices, minimized over relabelings of `z_hat`.

    Exhaustive over permutations for r <= 8; optimal assignment (Hungarian,
    maximizing agreements on the confusion matrix) above. Both solve the same
    assignment problem exactly.
    """
    z = check_labels(z, r, "z")
    z_hat = check_labels(z_hat, r, "z_hat")
    if z.shape != z_hat.shape:
        raise ValueError(f"length mismatch: {z.shape} vs {z_hat.shape}")
    n = z.size
    if n == 0:
        raise ValueError("empty label vectors")
    c = _confusion(z, z_hat, r)
    if r <= _EXHAUSTIVE_R_MAX:
        agreements = max(
            sum(c[a, pi[a]] for a in range(r)) for pi in permutations(range(r))
        )
    else:
        rows, cols = linear_sum_assignment(c, maximize=True)
        agreements = int(c[rows, cols].sum())
    return 1.0 - agreements / n
