"""Scikit-learn compatible estimators over the functional core.

All estimators consume a precomputed signed weight matrix (n x n, symmetric
up to averaging, weights conventionally in [-1, 1]) — the same substrate the
rest of the package uses — and expose the usual ``fit`` / ``fit_predict`` /
``labels_`` surface so they compose with scikit-learn tooling.
"""

from __future__ import annotations

import numpy as np
from sklearn.base import BaseEstimator, ClusterMixin

from . import baselines
from .divisive import ClusterConfig, cluster
from .graph import from_dense, intra_agreement
from .qubo import SaConfig


class GCSQClustering(BaseEstimator, ClusterMixin):
    """Divisive correlation clustering via recursive QUBO bipartitioning.

    The estimator discovers the number of clusters: it keeps splitting while
    a split strictly increases intra-cluster agreement and stops otherwise.

    Parameters
    ----------
    solver : "auto" | "exact" | "sa" or a registered backend name.
    min_split_size : smallest cluster the engine will try to split.
    tol : zero tolerance for the cut-acceptance test.
    sweeps, restarts, t_start, t_final : simulated-annealing schedule
        overrides (None means derive from the problem).
    record_trace : keep the per-split trace on ``trace_``.
    random_state : seed for the stochastic solver.

    Attributes
    ----------
    labels_ : cluster label per node.
    n_clusters_ : number of clusters found.
    agreement_ : total intra-cluster agreement of the result.
    trace_ : list of split records (empty unless record_trace).
    """

    def __init__(
        self,
        solver: str = "auto",
        min_split_size: int = 2,
        tol: float = 1e-9,
        sweeps: int | None = None,
        restarts: int = 8,
        t_start: float | None = None,
        t_final: float | None = None,
        record_trace: bool = False,
        random_state: int = 0,
    ):
        self.solver = solver
        self.min_split_size = min_split_size
        self.tol = tol
        self.sweeps = sweeps
        self.restarts = restarts
        self.t_start = t_start
        self.t_final = t_final
        self.record_trace = record_trace
        self.random_state = random_state

    def fit(self, X, y=None):
        g = from_dense(X)
        cfg = ClusterConfig(
            backend=self.solver,
            min_split_size=self.min_split_size,
            tol=self.tol,
            record_trace=self.record_trace,
            sa=SaConfig(
                sweeps=self.sweeps,
                restarts=self.restarts,
                t_start=self.t_start,
                t_final=self.t_final,
                seed=self.random_state,
            ),
        )
        partition, trace = cluster(g, cfg)
        self.labels_ = partition.labels
        self.n_clusters_ = partition.k
        self.agreement_ = intra_agreement(g, partition)
        self.trace_ = trace
        return self


class _DissimilarityBaseline(BaseEstimator, ClusterMixin):
    """Shared fit logic: signed weights -> dissimilarity -> baseline method."""

    def _partition(self, d):
        raise NotImplementedError

    def fit(self, X, y=None):
        g = from_dense(X)
        d = baselines.to_dissimilarity(g)
        partition = self._partition(d)
        self.labels_ = partition.labels
        self.n_clusters_ = partition.k
        return self


class DianaClustering(_DissimilarityBaseline):
    """Divisive (splinter-based) clustering into ``n_clusters`` groups."""

    def __init__(self, n_clusters: int = 2):
        self.n_clusters = n_clusters

    def _partition(self, d):
        return baselines.diana(d, self.n_clusters)


class AverageLinkageClustering(_DissimilarityBaseline):
    """Bottom-up average-linkage merging into ``n_clusters`` groups."""

    def __init__(self, n_clusters: int = 2):
        self.n_clusters = n_clusters

    def _partition(self, d):
        return baselines.agglomerative(d, self.n_clusters)


class PamClustering(_DissimilarityBaseline):
    """k-medoids (BUILD + SWAP) into ``n_clusters`` groups."""

    def __init__(self, n_clusters: int = 2, random_state: int = 0):
        self.n_clusters = n_clusters
        self.random_state = random_state

    def _partition(self, d):
        return baselines.pam(d, self.n_clusters, seed=self.random_state)
