"""Dense d-way tensor operations: matricization, mode products, Tucker assembly.

Tensors are plain numpy arrays in C (row-major) order, which realizes the
lexicographic layout used throughout this package: the last index varies
fastest. Mode indices are 1-based, matching the usual multiway-array
convention (mode 1 is the first axis).
"""

from __future__ import annotations

import numpy as np

from .validation import as_matrix, as_tensor, check_mode


def matricize(t: np.ndarray, mode: int) -> np.ndarray:
    """Unfold a d-way tensor along `mode` into an (n_mode, prod(other dims)) matrix.

    Rows index the chosen mode; columns enumerate the remaining modes in
    increasing mode order, with the last remaining mode varying fastest.
    """
    t = as_tensor(t)
    k = check_mode(t, mode)
    return np.moveaxis(t, k, 0).reshape(t.shape[k], -1)


def dematricize(m: np.ndarray, mode: int, dims) -> np.ndarray:
    """Inverse of :func:`matricize`: refold a matrix into a tensor of shape `dims`."""
    m = as_matrix(m)
    dims = tuple(int(n) for n in dims)
    k = mode - 1
    if not 0 <= k < len(dims):
        raise ValueError(f"mode must be in [1, {len(dims)}], got {mode}")
    moved = (dims[k],) + dims[:k] + dims[k + 1 :]
    return np.moveaxis(m.reshape(moved), 0, k)


def mode_k_product(t: np.ndarray, m: np.ndarray, mode: int) -> np.ndarray:
    """Multiply tensor `t` along `mode` by matrix `m` (columns must match that extent)."""
    t = as_tensor(t)
    m = as_matrix(m)
    k = check_mode(t, mode)
    if m.shape[1] != t.shape[k]:
        raise ValueError(
            f"matrix has {m.shape[1]} columns but mode {mode} has extent {t.shape[k]}"
        )
    out = np.tensordot(m, t, axes=(1, k))
    return np.moveaxis(out, 0, k)


def tucker_assemble(core: np.ndarray, factors) -> np.ndarray:
    """Apply mode-k products of `factors[k-1]` over modes 1..d of `core`."""
    core = as_tensor(core)
    factors = list(factors)
    if len(factors) != core.ndim:
        raise ValueError(f"expected {core.ndim} factor matrices, got {len(factors)}")
    out = core
    for k, f in enumerate(factors, start=1):
        out = mode_k_product(out, f, k)
    return out


def aggregate_modes(t: np.ndarray, d_keep: int) -> np.ndarray:
    """Sum a d-way tensor over its trailing modes, keeping the first `d_keep`."""
    t = as_tensor(t)
    d = t.ndim
    if not 1 <= d_keep < d:
        raise ValueError(f"d_keep must be in [1, {d - 1}], got {d_keep}")
    return t.sum(axis=tuple(range(d_keep, d)))


def elementwise_product(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    a = as_tensor(a, "a")
    b = as_tensor(b, "b")
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    return a * b


def frobenius_norm(t: np.ndarray) -> float:
    return float(np.linalg.norm(np.ravel(as_tensor(t))))
