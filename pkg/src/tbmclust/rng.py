"""Deterministic seed derivation.

All randomness in the package flows from 64-bit master seeds through
`numpy.random.SeedSequence`, a splittable counter-based scheme: a child seed is
a pure function of (master seed, integer path), so independent streams can be
drawn in any order, on any schedule, with identical results.
"""

from __future__ import annotations

import numpy as np


def derive_seed(master_seed: int, *path: int) -> int:
    """Derive a 64-bit child seed from a master seed and an integer path."""
    ss = np.random.SeedSequence(master_seed, spawn_key=tuple(int(p) for p in path))
    return int(ss.generate_state(1, np.uint64)[0])


def generator(seed: int, *path: int) -> np.random.Generator:
    """Counter-based (Philox) generator for the stream (seed, *path)."""
    ss = np.random.SeedSequence(seed, spawn_key=tuple(int(p) for p in path))
    return np.random.Generator(np.random.Philox(ss))
