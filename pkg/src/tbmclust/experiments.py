"""Phase-transition sweeps and the log-log decision-boundary fit.

A sweep runs the clustering pipelines over an (n, rho) grid of Bernoulli or
Poisson block models with balanced clusters shared across modes, recording one
accuracy per (n, rho, replicate, algorithm) cell. Cell seeds are derived from
the master seed and the cell's grid coordinates, so results are independent of
execution order and worker count.

The empirical consistency boundary is fitted by labeling each run as above or
below an accuracy threshold and running a logistic regression on
(1, log n, log rho); the boundary slope magnitude gamma separates the
consistent region rho >> n^-gamma from the inconsistent one.
"""

from __future__ import annotations

import csv
import math
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np
from scipy.special import expit

from .algorithms import ALGORITHM_NAMES, cluster_tensor, hollow_svd_embedding, hsc_embedding
from .cluster import misclassification
from .model import TbmSpec, sample
from .rng import derive_seed
from .validation import as_tensor

CSV_HEADER = ("n", "rho", "replicate", "algorithm", "accuracy", "wall_ms", "seed")

# Symmetric 2x2x2 cores for the phase-transition experiments, S[:, :, k] being
# the k-th slice. Their names describe the third-mode aggregate
# S'_{ab} = mean_c S_{abc}: the first aggregates to a constant matrix (useless
# for clustering), the second to a diagonal one.
UNINFORMATIVE_CORE = np.array([[[1.0, 0.0], [0.0, 1.0]], [[0.0, 1.0], [1.0, 0.0]]]).transpose(1, 2, 0)
INFORMATIVE_CORE = np.array([[[1.0, 0.0], [0.0, 0.0]], [[0.0, 0.0], [0.0, 1.0]]]).transpose(1, 2, 0)
# Variant with the zeros lifted to 1/2 so embeddings of different clusters
# are not orthogonal; used for the embedding study around the transition.
OVERLAP_CORE = np.array([[[1.0, 0.5], [0.5, 1.0]], [[0.5, 1.0], [1.0, 0.5]]]).transpose(1, 2, 0)

NAMED_CORES = {
    "uninformative": UNINFORMATIVE_CORE,
    "informative": INFORMATIVE_CORE,
    "overlap": OVERLAP_CORE,
}


class DegenerateLabelsError(ValueError):
    """All runs fall on one side of the accuracy threshold."""


class ConvergenceError(RuntimeError):
    """Newton iteration failed; `weights` carries the last iterate."""

    def __init__(self, message, weights):
        super().__init__(message)
        self.weights = weights


@dataclass(frozen=True)
class SweepGrid:
    """The (n, rho, replicate, algorithm) experiment lattice."""

    n_values: tuple
    rho_values: tuple
    core: np.ndarray
    algorithms: tuple = ALGORITHM_NAMES
    replicates: int = 5
    noise: str = "bernoulli"
    master_seed: int = 0
    accuracy_threshold: float = 0.9
    restarts: int = 20
    c_trim: float = 3.0
    hsc_init: str = "vanilla-svd"
    measure_time: bool = False

    def __post_init__(self):
        object.__setattr__(self, "n_values", tuple(int(n) for n in self.n_values))
        object.__setattr__(self, "rho_values", tuple(float(r) for r in self.rho_values))
        object.__setattr__(self, "core", as_tensor(self.core, "core"))
        object.__setattr__(self, "algorithms", tuple(self.algorithms))
        if not self.n_values or not self.rho_values or not self.algorithms:
            raise ValueError("grids and algorithm list must be nonempty")
        if not 0.5 < self.accuracy_threshold < 1:
            raise ValueError("accuracy threshold must lie in (0.5, 1)")
        if self.replicates < 1:
            raise ValueError("replicates must be >= 1")
        r = self.core.shape[0]
        if any(n % r for n in self.n_values):
            raise ValueError("every n must be divisible by the cluster count")
        if self.noise == "bernoulli":
            if max(self.rho_values) * float(np.max(np.abs(self.core))) > 1:
                raise ValueError("Bernoulli means exceed 1 somewhere on the grid")

    @property
    def n_clusters(self) -> int:
        return self.core.shape[0]


@dataclass(frozen=True)
class CellResult:
    n: int
    rho: float
    replicate: int
    algorithm: str
    accuracy: float
    wall_ms: float
    seed: int


@dataclass(frozen=True)
class BoundaryFit:
    """Fitted decision boundary w0 + w1*log(n) + w2*log(rho) = 0."""

    algorithm: str
    gamma_hat: float
    intercept: float
    weights: tuple
    n_cells: int
    threshold: float
    converged: bool
    iterations: int
    grad_norm: float
    reliable: bool
    n_dropped: int

    def to_json(self) -> dict:
        return {
            "algorithm": self.algorithm,
            "gamma_hat": self.gamma_hat,
            "intercept": self.intercept,
            "weights": list(self.weights),
            "n_cells": self.n_cells,
            "threshold": self.threshold,
            "converged": self.converged,
            "diagnostics": {
                "iterations": self.iterations,
                "grad_norm": self.grad_norm,
                "reliable": self.reliable,
                "n_dropped": self.n_dropped,
            },
        }


def log_spaced_ints(lo: int, hi: int, count: int, multiple_of: int = 2) -> tuple:
    """Logarithmically spaced integers rounded to a multiple (deduplicated)."""
    raw = np.geomspace(lo, hi, count)
    vals = [max(multiple_of, int(round(x / multiple_of)) * multiple_of) for x in raw]
    out = []
    for v in vals:
        if v not in out:
            out.append(v)
    return tuple(out)


def balanced_memberships(n: int, r: int) -> np.ndarray:
    """Deterministic balanced 1-based membership vector (n divisible by r)."""
    if n % r:
        raise ValueError(f"n={n} not divisible by r={r}")
    return np.repeat(np.arange(1, r + 1), n // r)


def _cell_spec(grid: SweepGrid, n: int, rho: float) -> TbmSpec:
    z = balanced_memberships(n, grid.n_clusters)
    memberships = tuple(z for _ in range(grid.core.ndim))
    return TbmSpec(rho=rho, core=grid.core, memberships=memberships, noise=grid.noise)


def _run_cell(args):
    grid, n_idx, rho_idx, rep, alg_idx = args
    n = grid.n_values[n_idx]
    rho = grid.rho_values[rho_idx]
    algorithm = grid.algorithms[alg_idx]
    cell_seed = derive_seed(grid.master_seed, n_idx, rho_idx, rep, alg_idx)
    start = time.perf_counter() if grid.measure_time else 0.0
    try:
        spec = _cell_spec(grid, n, rho)
        y = sample(spec, derive_seed(cell_seed, 0))
        assignment = cluster_tensor(
            y,
            algorithm,
            mode=1,
            n_clusters=grid.n_clusters,
            rho=rho,
            c_trim=grid.c_trim,
            hsc_init=grid.hsc_init,
            seed=derive_seed(cell_seed, 1),
            restarts=grid.restarts,
        )
        accuracy = 1.0 - misclassification(
            spec.memberships[0], assignment.labels, grid.n_clusters
        )
    except Exception:
        accuracy = float("nan")
    wall_ms = (time.perf_counter() - start) * 1e3 if grid.measure_time else 0.0
    return CellResult(
        n=n,
        rho=rho,
        replicate=rep,
        algorithm=algorithm,
        accuracy=accuracy,
        wall_ms=wall_ms,
        seed=cell_seed,
    )


def _cell_order(grid: SweepGrid):
    for n_idx in range(len(grid.n_values)):
        for rho_idx in range(len(grid.rho_values)):
            for rep in range(grid.replicates):
                for alg_idx in range(len(grid.algorithms)):
                    yield (grid, n_idx, rho_idx, rep, alg_idx)


def run_sweep(grid: SweepGrid, jobs: int = 1) -> list:
    """One CellResult per lattice point, in grid order regardless of schedule."""
    tasks = list(_cell_order(grid))
    if jobs <= 1:
        return [_run_cell(t) for t in tasks]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(_run_cell, tasks, chunksize=8))


def _fmt(x: float) -> str:
    return format(x, ".17g")


def write_results_csv(results, path) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(CSV_HEADER)
        for r in results:
            writer.writerow(
                [
                    r.n,
                    _fmt(r.rho),
                    r.replicate,
                    r.algorithm,
                    _fmt(r.accuracy),
                    _fmt(r.wall_ms),
                    r.seed,
                ]
            )


def read_results_csv(path) -> list:
    out = []
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        for row in reader:
            out.append(
                CellResult(
                    n=int(row["n"]),
                    rho=float(row["rho"]),
                    replicate=int(row["replicate"]),
                    algorithm=row["algorithm"],
                    accuracy=float(row["accuracy"]),
                    wall_ms=float(row["wall_ms"]),
                    seed=int(row["seed"]),
                )
            )
    return out


def fit_logistic(x: np.ndarray, y: np.ndarray, l2: float = 1e-6, tol: float = 1e-8,
                 max_iter: int = 200):
    """Damped Newton for L2-penalized logistic regression.

    Returns (weights, iterations, gradient norm). The penalty applies to all
    coefficients, keeping the problem strictly convex even for separable data.
    """
    n, p = x.shape
    w = np.zeros(p)

    def objective(w):
        margins = x @ w
        # log(1 + exp(-m)) for y=1 and log(1 + exp(m)) for y=0, stably
        signed = np.where(y, -margins, margins)
        return float(np.logaddexp(0.0, signed).sum() + 0.5 * l2 * w @ w)

    obj = objective(w)
    for it in range(1, max_iter + 1):
        probs = expit(x @ w)
        grad = x.T @ (probs - y) + l2 * w
        gnorm = float(np.linalg.norm(grad))
        if gnorm < tol:
            return w, it - 1, gnorm
        weights_diag = probs * (1.0 - probs)
        hess = (x.T * weights_diag) @ x + l2 * np.eye(p)
        step = np.linalg.solve(hess, grad)
        # backtracking keeps the penalized objective non-increasing, up to
        # float round-off (full Newton steps are fine near the optimum)
        scale = 1.0
        for _ in range(60):
            candidate = w - scale * step
            cand_obj = objective(candidate)
            if cand_obj <= obj + 1e-12 * (1.0 + abs(obj)):
                break
            scale *= 0.5
        w = w - scale * step
        obj = objective(w)
    gnorm = float(np.linalg.norm(x.T @ (expit(x @ w) - y) + l2 * w))
    if gnorm < tol:
        return w, max_iter, gnorm
    raise ConvergenceError(
        f"logistic Newton did not reach gradient norm {tol} "
        f"in {max_iter} iterations (|grad| = {gnorm:.3e})",
        w,
    )


def fit_boundary(
    results,
    algorithm: str,
    threshold: float = 0.9,
    l2: float = 1e-6,
    tol: float = 1e-8,
    max_iter: int = 200,
    weight_tol: float = 0.5,
) -> BoundaryFit:
    """Logistic-regression boundary fit in (log n, log rho) coordinates.

    Each finite-accuracy run of `algorithm` contributes one labeled point:
    success when accuracy >= threshold. gamma_hat is w1 / w2 for the fitted
    boundary w0 + w1 log n + w2 log rho = 0. Near-zero (w1, w2) means the
    labels carry no boundary signal; the fit is then flagged unreliable.
    """
    mine = [r for r in results if r.algorithm == algorithm]
    rows = [r for r in mine if math.isfinite(r.accuracy)]
    n_dropped = len(mine) - len(rows)
    if not rows:
        raise DegenerateLabelsError(f"no usable cells for algorithm {algorithm!r}")
    y = np.array([r.accuracy >= threshold for r in rows], dtype=float)
    if y.min() == y.max():
        raise DegenerateLabelsError(
            f"degenerate labels: all runs on one side of threshold {threshold}"
        )
    x = np.column_stack(
        [
            np.ones(len(rows)),
            np.log([r.n for r in rows]),
            np.log([r.rho for r in rows]),
        ]
    )
    w, iters, gnorm = fit_logistic(x, y, l2=l2, tol=tol, max_iter=max_iter)
    w0, w1, w2 = (float(v) for v in w)
    reliable = math.hypot(w1, w2) >= weight_tol and w2 != 0.0
    gamma_hat = w1 / w2 if w2 != 0.0 else float("nan")
    intercept = -w0 / w2 if w2 != 0.0 else float("nan")
    return BoundaryFit(
        algorithm=algorithm,
        gamma_hat=gamma_hat,
        intercept=intercept,
        weights=(w0, w1, w2),
        n_cells=len(rows),
        threshold=threshold,
        converged=True,
        iterations=iters,
        grad_norm=gnorm,
        reliable=reliable,
        n_dropped=n_dropped,
    )


def linear_probe_accuracy(points: np.ndarray, labels: np.ndarray) -> float:
    """Accuracy of a logistic probe separating 2-class labels in a 2-D embedding."""
    labels = np.asarray(labels)
    classes = np.unique(labels)
    if classes.size != 2:
        raise ValueError("probe expects exactly two classes")
    y = (labels == classes[1]).astype(float)
    x = np.column_stack([np.ones(len(y)), points])
    try:
        w, _, _ = fit_logistic(x, y, l2=1e-6, tol=1e-6, max_iter=100)
    except ConvergenceError as err:
        w = err.weights
    pred = (x @ w) > 0
    return float(np.mean(pred == (y > 0.5)))


@dataclass(frozen=True)
class EmbeddingStudyResult:
    rho: float
    labels: np.ndarray
    embeddings: dict = field(default_factory=dict)  # algorithm -> (n, 2) array


def embedding_study(
    n: int,
    rho_values,
    core: np.ndarray,
    master_seed: int = 0,
    noise: str = "bernoulli",
    c_trim: float = 3.0,
) -> list:
    """2-D spectral embeddings around the phase transition, plot-ready.

    For each rho, samples one tensor and records the hollow-svd embedding and
    the hsc embedding initialized with hollow-svd (the trimming keeps heavy
    outlier rows from dominating the projections near the transition).
    """
    core = as_tensor(core, "core")
    r = core.shape[0]
    if r != 2:
        raise ValueError("embedding study is defined for the 2-cluster setting")
    z = balanced_memberships(n, r)
    out = []
    for idx, rho in enumerate(rho_values):
        spec = TbmSpec(
            rho=float(rho),
            core=core,
            memberships=tuple(z for _ in range(core.ndim)),
            noise=noise,
        )
        y = sample(spec, derive_seed(master_seed, idx))
        hollow = hollow_svd_embedding(y, 1, r, c_trim=c_trim, rho=float(rho))
        hsc = hsc_embedding(y, 1, r, init="hollow-svd", c_trim=c_trim, rho=float(rho))
        out.append(
            EmbeddingStudyResult(
                rho=float(rho),
                labels=z,
                embeddings={"hollow-svd": hollow, "hsc": hsc},
            )
        )
    return out


def write_embeddings_tsv(results, path, algorithm: str) -> None:
    """TSV with columns node, true_label, x, y, rho for one algorithm."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write("node\ttrue_label\tx\ty\trho\n")
        for res in results:
            emb = res.embeddings[algorithm]
            for i in range(emb.shape[0]):
                fh.write(
                    f"{i + 1}\t{res.labels[i]}\t{_fmt(emb[i, 0])}\t"
                    f"{_fmt(emb[i, 1])}\t{_fmt(res.rho)}\n"
                )
