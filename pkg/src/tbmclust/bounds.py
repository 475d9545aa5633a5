"""Theory-side bounds used as test oracles and diagnostics.

Includes the Bennett tail function for sub-Poisson variables, the chained
Bennett/Bernstein tail bounds, a lower bound on the separation of Gram-matrix
rows of a noiseless block-model matricization, and the deterministic
misclassification bound for quasi-optimal k-means on a rank-r approximation.
"""

from __future__ import annotations

import numpy as np

from .model import TbmSpec, diagnostics
from .validation import check_labels


def bennett_beta(t, sigma2):
    """Bennett tail bound exp(-s2) * (e*s2 / (s2 + t))^(s2 + t).

    Evaluated in log form, log beta = t - (s2 + t) * log1p(t / s2), which is
    stable for small and large t alike. Vectorizes over t and sigma2.
    """
    t = np.asarray(t, dtype=float)
    s2 = np.asarray(sigma2, dtype=float)
    if np.any(t < 0):
        raise ValueError("t must be nonnegative")
    if np.any(s2 <= 0):
        raise ValueError("sigma2 must be positive")
    out = np.exp(t - (s2 + t) * np.log1p(t / s2))
    if out.ndim == 0:
        return float(out)
    return out


def tail_bounds(t, sigma2):
    """The Bennett bound and its two Bernstein relaxations, as a triple.

    Returns (bennett, bernstein1, bernstein2) with the chain
    bennett <= bernstein1 <= bernstein2 checked before returning.
    """
    t = np.asarray(t, dtype=float)
    s2 = np.asarray(sigma2, dtype=float)
    bennett = bennett_beta(t, s2)
    bernstein1 = np.exp(-(t**2 / 2) / (s2 + t / 3))
    bernstein2 = np.exp(-np.minimum(t**2 / (4 * s2), 3 * t / 4))
    slack = 1 + 1e-12
    if np.any(bennett > bernstein1 * slack) or np.any(bernstein1 > bernstein2 * slack):
        raise AssertionError("tail bound ordering violated")
    if np.ndim(bennett) == 0:
        return float(bennett), float(bernstein1), float(bernstein2)
    return bennett, bernstein1, bernstein2


def separation_lower_bound(spec: TbmSpec, mode: int) -> float:
    """Lower bound on the min distance between Gram rows of distinct clusters.

    For X the mode-k matricization of the signal tensor, every pair i, j with
    different labels satisfies

        |(XX^T)_i: - (XX^T)_j:|  >=  (prod_k' alpha_k' / sqrt(2 alpha_k))
                                     * (delta_k^2 / sqrt(n_k r_k)) * n_1...n_d * rho^2.

    Requires positive separation and nonempty clusters along `mode`.
    """
    d = spec.order
    if not 1 <= mode <= d:
        raise ValueError(f"mode must be in [1, {d}], got {mode}")
    diag = diagnostics(spec)
    delta_k = diag.separations[mode - 1]
    alpha_k = diag.balances[mode - 1]
    if delta_k <= 0 or any(a <= 0 for a in diag.balances):
        raise ValueError("requires positive separation and nonempty clusters")
    n_total = float(np.prod(spec.dims))
    n_k = spec.dims[mode - 1]
    r_k = spec.ranks[mode - 1]
    alpha_prod = float(np.prod(diag.balances))
    return (
        alpha_prod
        / np.sqrt(2 * alpha_k)
        * delta_k**2
        / np.sqrt(n_k * r_k)
        * n_total
        * spec.rho**2
    )


def kmeans_misclass_bound(noise_norm: float, r: int, n: int, delta: float, q: float) -> float:
    """Deterministic misclassification bound 128 * Q * r * |E|^2 / (n * Delta^2).

    Valid for quasi-optimal (factor Q) k-means on the rows of the best rank-r
    approximation, provided every true cluster has more than
    128 * Q * r * |E|^2 / Delta^2 members.
    """
    if delta <= 0:
        raise ValueError("delta must be positive")
    return 128.0 * q * r * noise_norm**2 / (n * delta**2)


def kmeans_size_hypothesis(z, r: int, noise_norm: float, delta: float, q: float) -> bool:
    """Whether min cluster size exceeds 128 * Q * r * |E|^2 / Delta^2."""
    z = check_labels(z, r)
    counts = np.bincount(z - 1, minlength=r)
    return float(counts.min()) > 128.0 * q * r * noise_norm**2 / delta**2
