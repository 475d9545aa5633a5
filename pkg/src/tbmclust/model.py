"""Tensor block models: specification, sampling, diagnostics, and aggregation.

A block model is parameterized by a density rho, a core tensor with entries in
[-1, 1], one membership vector per mode, and a noise family. Data tensors have
independent entries whose mean is rho * core looked up through the membership
labels; the supported families are Bernoulli and Poisson.
"""

from __future__ import annotations

import json
import warnings
from dataclasses import dataclass

import numpy as np

from .rng import generator
from .tensor import matricize
from .validation import as_tensor, check_labels

NOISE_FAMILIES = ("bernoulli", "poisson", "aggregated")


@dataclass(frozen=True)
class TbmSpec:
    """Full parameterization of a tensor block model.

    memberships hold 1-based labels: memberships[k][i] is the cluster of index
    i along mode k+1. The "aggregated" noise family tags specs produced by
    :func:`aggregate_spec`; their entry distribution is only known to be
    sub-Poisson, so they cannot be re-sampled.
    """

    rho: float
    core: np.ndarray
    memberships: tuple
    noise: str = "bernoulli"

    def __post_init__(self):
        core = as_tensor(self.core, "core")
        object.__setattr__(self, "core", core)
        if self.rho < 0:
            raise ValueError(f"rho must be nonnegative, got {self.rho}")
        if np.max(np.abs(core)) > 1 + 1e-12:
            raise ValueError("core entries must lie in [-1, 1]")
        if self.noise not in NOISE_FAMILIES:
            raise ValueError(f"unknown noise family {self.noise!r}")
        if self.noise == "bernoulli":
            means = self.rho * core
            if means.min() < -1e-12 or means.max() > 1 + 1e-12:
                raise ValueError("Bernoulli requires rho * core entries in [0, 1]")
        if len(self.memberships) != core.ndim:
            raise ValueError(
                f"expected {core.ndim} membership vectors, got {len(self.memberships)}"
            )
        zs = tuple(
            check_labels(z, core.shape[k], f"memberships[{k}]")
            for k, z in enumerate(self.memberships)
        )
        object.__setattr__(self, "memberships", zs)

    @property
    def order(self) -> int:
        return self.core.ndim

    @property
    def dims(self) -> tuple:
        return tuple(z.size for z in self.memberships)

    @property
    def ranks(self) -> tuple:
        return self.core.shape

    def to_json(self) -> dict:
        return {
            "rho": float(self.rho),
            "dims": list(self.dims),
            "ranks": list(self.ranks),
            "core": [float(x) for x in self.core.ravel()],
            "memberships": [z.tolist() for z in self.memberships],
            "noise": self.noise,
        }

    @classmethod
    def from_json(cls, doc: dict) -> "TbmSpec":
        ranks = tuple(int(r) for r in doc["ranks"])
        core = np.asarray(doc["core"], dtype=float).reshape(ranks)
        memberships = tuple(np.asarray(z, dtype=np.int64) for z in doc["memberships"])
        spec = cls(
            rho=float(doc["rho"]),
            core=core,
            memberships=memberships,
            noise=doc.get("noise", "bernoulli"),
        )
        if "dims" in doc and tuple(int(n) for n in doc["dims"]) != spec.dims:
            raise ValueError("dims field disagrees with membership lengths")
        return spec

    def dumps(self) -> str:
        return json.dumps(self.to_json())

    @classmethod
    def loads(cls, s: str) -> "TbmSpec":
        return cls.from_json(json.loads(s))


@dataclass(frozen=True)
class ModelDiagnostics:
    """Per-mode cluster separations and balance coefficients."""

    separations: tuple
    balances: tuple


def membership_matrix(z: np.ndarray, r: int) -> np.ndarray:
    """(n, r) 0/1 indicator matrix of a 1-based membership vector."""
    z = check_labels(z, r)
    m = np.zeros((z.size, r))
    m[np.arange(z.size), z - 1] = 1.0
    return m


def signal_tensor(spec: TbmSpec) -> np.ndarray:
    """Mean tensor: entry (i_1..i_d) is rho * core[z_1(i_1), ..., z_d(i_d)]."""
    block_means = spec.rho * spec.core
    return block_means[np.ix_(*[z - 1 for z in spec.memberships])]


def sample(spec: TbmSpec, seed: int) -> np.ndarray:
    """Draw a data tensor with independent entries; deterministic given seed."""
    x = signal_tensor(spec)
    rng = generator(seed)
    if spec.noise == "bernoulli":
        if x.min() < 0 or x.max() > 1:
            raise ValueError("Bernoulli means must lie in [0, 1]")
        return (rng.random(x.shape) < x).astype(float)
    if spec.noise == "poisson":
        if x.min() < 0:
            raise ValueError("Poisson means must be nonnegative")
        return rng.poisson(x).astype(float)
    raise ValueError("aggregated specs cannot be re-sampled; aggregate sampled tensors")


def diagnostics(spec: TbmSpec) -> ModelDiagnostics:
    """Cluster separation and balance per mode.

    Separation along mode k is the minimum distance between distinct rows of
    the mode-k matricized core, normalized by the square root of its width.
    Balance is the smallest cluster size relative to n_k / r_k; an empty
    cluster is reported as balance 0 with a warning rather than an error.
    """
    seps = []
    bals = []
    for k in range(spec.order):
        s = matricize(spec.core, k + 1)
        r_k = spec.ranks[k]
        width = s.shape[1]
        if r_k == 1:
            seps.append(float("inf"))
        else:
            dmin = min(
                float(np.linalg.norm(s[l] - s[m]))
                for l in range(r_k)
                for m in range(l + 1, r_k)
            )
            seps.append(dmin / np.sqrt(width))
        counts = np.bincount(spec.memberships[k] - 1, minlength=r_k)
        n_k = spec.dims[k]
        if counts.min() == 0:
            warnings.warn(
                f"mode {k + 1} has an empty cluster; balance reported as 0",
                stacklevel=2,
            )
            bals.append(0.0)
        else:
            bals.append(float(counts.min() / (n_k / r_k)))
    return ModelDiagnostics(separations=tuple(seps), balances=tuple(bals))


def aggregate_spec(spec: TbmSpec, d_keep: int) -> TbmSpec:
    """Block model of the tensor summed over trailing modes.

    Density scales by the product of the aggregated extents; the new core
    averages the old one over the trailing membership labels. The result is
    tagged with the opaque "aggregated" noise family.
    """
    d = spec.order
    if not 1 <= d_keep < d:
        raise ValueError(f"d_keep must be in [1, {d - 1}], got {d_keep}")
    core = spec.core
    for k in range(d - 1, d_keep - 1, -1):
        counts = np.bincount(spec.memberships[k] - 1, minlength=spec.ranks[k])
        weights = counts / spec.dims[k]
        core = np.tensordot(core, weights, axes=([k], [0]))
    trailing = 1
    for k in range(d_keep, d):
        trailing *= spec.dims[k]
    return TbmSpec(
        rho=trailing * spec.rho,
        core=core,
        memberships=spec.memberships[:d_keep],
        noise="aggregated",
    )
