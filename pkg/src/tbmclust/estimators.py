"""scikit-learn style estimator front end for the clustering pipelines."""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin

from .algorithms import (
    ALGORITHM_NAMES,
    UnknownAlgorithmError,
    aggregate_svd_embedding,
    hollow_svd_embedding,
    hsc_embedding,
    vanilla_svd_embedding,
)
from .cluster import kmeans_plus_plus
from .validation import as_tensor


class TensorBlockClustering(BaseEstimator, ClusterMixin):
    """Cluster one mode of a d-way data tensor with a spectral pipeline.

    Parameters
    ----------
    algorithm : one of "hollow-svd", "vanilla-svd", "hsc", "aggregate-svd".
    mode : 1-based mode whose indices are clustered (ignored by aggregate-svd,
        which always clusters the first mode of a 3-way tensor).
    n_clusters : number of clusters along that mode.
    rho : known density of the generating model, used for default trimming
        thresholds; estimated from the data when None.
    trim_threshold : explicit trimming threshold, overriding the default
        c_trim-based one. Use numpy.inf to disable trimming.
    c_trim : constant in the default threshold c_trim * rho^2 * (tensor size)
        for hollow-svd (and c_trim * rho * n^2 for aggregate-svd).
    hsc_init : initializer for the hsc pipeline ("vanilla-svd" or "hollow-svd").
    relaxation : quasi-optimality constant Q carried for bound evaluation;
        does not affect fitting.
    restarts : k-means++ restarts; the best-cost run wins.
    random_state : seed for the k-means++ stage.

    Attributes
    ----------
    labels_ : 1-based cluster labels for the clustered mode.
    centroids_ : k-means centroids in the spectral embedding.
    inertia_ : k-means cost of the returned assignment.
    embedding_ : (n, n_clusters) spectral embedding whose rows were clustered.
    """

    def __init__(
        self,
        algorithm="hollow-svd",
        mode=1,
        n_clusters=2,
        rho=None,
        trim_threshold=None,
        c_trim=3.0,
        hsc_init="vanilla-svd",
        relaxation=2.0,
        restarts=20,
        random_state=0,
    ):
        self.algorithm = algorithm
        self.mode = mode
        self.n_clusters = n_clusters
        self.rho = rho
        self.trim_threshold = trim_threshold
        self.c_trim = c_trim
        self.hsc_init = hsc_init
        self.relaxation = relaxation
        self.restarts = restarts
        self.random_state = random_state

    def _embed(self, y: np.ndarray) -> np.ndarray:
        if self.algorithm == "hollow-svd":
            return hollow_svd_embedding(
                y,
                self.mode,
                self.n_clusters,
                trim_threshold=self.trim_threshold,
                c_trim=self.c_trim,
                rho=self.rho,
            )
        if self.algorithm == "vanilla-svd":
            return vanilla_svd_embedding(y, self.mode, self.n_clusters)
        if self.algorithm == "hsc":
            return hsc_embedding(
                y,
                self.mode,
                self.n_clusters,
                init=self.hsc_init,
                trim_threshold=self.trim_threshold,
                c_trim=self.c_trim,
                rho=self.rho,
            )
        if self.algorithm == "aggregate-svd":
            return aggregate_svd_embedding(
                y,
                self.n_clusters,
                trim_threshold=self.trim_threshold,
                c_trim=self.c_trim,
                rho=self.rho,
            )
        raise UnknownAlgorithmError(self.algorithm)

    def fit(self, X, y=None):
        """Compute the spectral embedding and cluster its rows.

        X is a d-way array (not the usual 2-d design matrix).
        """
        if self.algorithm not in ALGORITHM_NAMES:
            raise UnknownAlgorithmError(self.algorithm)
        tensor = as_tensor(X, "X")
        self.embedding_ = self._embed(tensor)
        assignment = kmeans_plus_plus(
            self.embedding_,
            self.n_clusters,
            seed=self.random_state,
            restarts=self.restarts,
        )
        self.labels_ = assignment.labels
        self.centroids_ = assignment.centroids
        self.inertia_ = assignment.cost
        return self
