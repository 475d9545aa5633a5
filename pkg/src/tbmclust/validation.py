"""Input validation helpers shared across the package."""

from __future__ import annotations

import numpy as np


def as_tensor(x, name="tensor"):
    """Coerce to a float64 d-way array and check basic shape sanity.

    Every extent must be >= 1 and all entries finite.
    """
    t = np.asarray(x, dtype=float)
    if t.ndim < 1:
        raise ValueError(f"{name} must have at least one mode")
    if any(n < 1 for n in t.shape):
        raise ValueError(f"{name} has an empty mode: shape {t.shape}")
    if not np.all(np.isfinite(t)):
        raise ValueError(f"{name} contains non-finite entries")
    return t


def as_matrix(x, name="matrix"):
    m = np.asarray(x, dtype=float)
    if m.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional, got ndim={m.ndim}")
    if not np.all(np.isfinite(m)):
        raise ValueError(f"{name} contains non-finite entries")
    return m


def check_mode(t: np.ndarray, mode: int) -> int:
    """Validate a 1-based mode index against the tensor order; return it 0-based."""
    d = t.ndim
    if not 1 <= mode <= d:
        raise ValueError(f"mode must be in [1, {d}], got {mode}")
    return mode - 1


def check_symmetric(a: np.ndarray, tol: float = 1e-12, name="matrix") -> np.ndarray:
    """Require a square matrix symmetric within `tol` (relative); return (A + A^T)/2."""
    a = as_matrix(a, name)
    n, m = a.shape
    if n != m:
        raise ValueError(f"{name} must be square, got {a.shape}")
    scale = max(1.0, float(np.max(np.abs(a))))
    asym = float(np.max(np.abs(a - a.T))) if n else 0.0
    if asym > tol * scale:
        raise ValueError(
            f"{name} is not symmetric: max|A - A^T| = {asym:.3e} exceeds {tol:.0e} * scale"
        )
    return 0.5 * (a + a.T)


def check_labels(z, r: int, name="labels") -> np.ndarray:
    """Validate a 1-based membership vector with labels in [1, r]."""
    z = np.asarray(z)
    if z.ndim != 1:
        raise ValueError(f"{name} must be 1-dimensional")
    if not np.issubdtype(z.dtype, np.integer):
        zi = z.astype(int)
        if not np.array_equal(zi, z):
            raise ValueError(f"{name} must be integer-valued")
        z = zi
    if z.size and (z.min() < 1 or z.max() > r):
        raise ValueError(f"{name} must take values in [1, {r}]")
    return z.astype(np.int64)
