"""Signed graph representation and the agreement/cut arithmetic.

A signed graph is a symmetric real-weighted graph over n nodes with zero
diagonal; positive weights encode agreement, negative weights disagreement.
Graphs are immutable after construction and all operations here are pure,
so instances are safe to share across workers.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import csvio
from .validation import check_labels, check_mask, check_square_matrix


@dataclass(frozen=True)
class SignedGraph:
    """Symmetric weighted graph with zero diagonal.

    ``node_ids`` holds the original identifiers of the nodes; for a subgraph
    they are indices into the parent graph, for a top-level graph simply
    0..n-1.
    """

    weights: np.ndarray
    node_ids: np.ndarray

    def __post_init__(self):
        w = self.weights
        ids = self.node_ids
        if w.shape[0] != ids.shape[0]:
            raise ValueError("node_ids length does not match weight matrix size")
        if len(set(ids.tolist())) != ids.shape[0]:
            raise ValueError("node_ids must be distinct")
        w.setflags(write=False)
        ids.setflags(write=False)

    @property
    def n(self) -> int:
        return self.weights.shape[0]

    def __eq__(self, other) -> bool:
        if not isinstance(other, SignedGraph):
            return NotImplemented
        return np.array_equal(self.weights, other.weights) and np.array_equal(
            self.node_ids, other.node_ids
        )


@dataclass(frozen=True)
class Partition:
    """Assignment of every node to exactly one cluster.

    Labels are canonicalized to 0..k-1 in order of first appearance, so equal
    partitions have equal representations.
    """

    labels: np.ndarray
    k: int = field(init=False)

    def __post_init__(self):
        labels = check_labels(self.labels)
        canonical = _canonical_labels(labels)
        object.__setattr__(self, "labels", canonical)
        object.__setattr__(self, "k", int(canonical.max()) + 1)
        canonical.setflags(write=False)

    @property
    def n(self) -> int:
        return self.labels.shape[0]

    def cluster_sizes(self) -> np.ndarray:
        return np.bincount(self.labels, minlength=self.k)

    def clusters(self) -> list[np.ndarray]:
        return [np.flatnonzero(self.labels == c) for c in range(self.k)]

    def __eq__(self, other) -> bool:
        if not isinstance(other, Partition):
            return NotImplemented
        return np.array_equal(self.labels, other.labels)

    def __hash__(self) -> int:
        return hash(self.labels.tobytes())


@dataclass(frozen=True)
class Bipartition:
    """Two-sided split of a graph's nodes: side A has mask=1, side B mask=0.

    Either side may be empty; callers decide whether that is an error.
    """

    mask: np.ndarray

    def __post_init__(self):
        mask = np.asarray(self.mask)
        out = check_mask(mask, mask.shape[0]) if mask.ndim == 1 else mask
        if out.ndim != 1:
            raise ValueError("mask must be 1-dimensional")
        object.__setattr__(self, "mask", out)
        out.setflags(write=False)

    @property
    def n(self) -> int:
        return self.mask.shape[0]

    def side_a(self) -> np.ndarray:
        return np.flatnonzero(self.mask == 1)

    def side_b(self) -> np.ndarray:
        return np.flatnonzero(self.mask == 0)


def _canonical_labels(labels: np.ndarray) -> np.ndarray:
    remap: dict[int, int] = {}
    out = np.empty_like(labels)
    for i, lab in enumerate(labels.tolist()):
        if lab not in remap:
            remap[lab] = len(remap)
        out[i] = remap[lab]
    return out


def from_dense(weights) -> SignedGraph:
    """Build a graph from a square matrix.

    Asymmetric input is symmetrized by averaging, w_ij <- (w_ij + w_ji) / 2,
    and the diagonal is zeroed; node_ids become 0..n-1.
    """
    w = check_square_matrix(weights, "weight matrix")
    w = (w + w.T) / 2.0
    np.fill_diagonal(w, 0.0)
    return SignedGraph(weights=w, node_ids=np.arange(w.shape[0], dtype=np.int64))


def from_edges(n: int, edges) -> SignedGraph:
    """Build a graph from an (i, j, weight) edge list; absent pairs weigh 0.

    Converts to dense storage internally; duplicate (i, j) entries overwrite.
    """
    if n <= 0:
        raise ValueError("n must be positive")
    w = np.zeros((n, n), dtype=np.float64)
    for i, j, v in edges:
        i, j = int(i), int(j)
        if not (0 <= i < n and 0 <= j < n):
            raise ValueError(f"edge ({i}, {j}) out of range for n={n}")
        v = float(v)
        if not np.isfinite(v):
            raise ValueError(f"edge ({i}, {j}) has non-finite weight")
        w[i, j] = v
        w[j, i] = v
    np.fill_diagonal(w, 0.0)
    return SignedGraph(weights=w, node_ids=np.arange(n, dtype=np.int64))


def subgraph(g: SignedGraph, nodes) -> SignedGraph:
    """Induced subgraph on ``nodes``; node_ids map back to g's identifiers."""
    idx = np.asarray(nodes, dtype=np.int64)
    if idx.size == 0:
        raise ValueError("subgraph node set must be non-empty")
    if idx.min() < 0 or idx.max() >= g.n:
        raise ValueError(f"node index out of range for graph of size {g.n}")
    if len(set(idx.tolist())) != idx.size:
        raise ValueError("subgraph node set must be distinct")
    w = g.weights[np.ix_(idx, idx)].copy()
    return SignedGraph(weights=w, node_ids=g.node_ids[idx].copy())


def cut_weight(g: SignedGraph, bipartition) -> float:
    """Total weight of edges crossing the bipartition; 0 if a side is empty."""
    mask = bipartition.mask if isinstance(bipartition, Bipartition) else bipartition
    mask = check_mask(mask, g.n)
    a = np.flatnonzero(mask == 1)
    b = np.flatnonzero(mask == 0)
    if a.size == 0 or b.size == 0:
        return 0.0
    return float(g.weights[np.ix_(a, b)].sum())


def intra_agreement(g: SignedGraph, partition) -> float:
    """Sum of w_ij over same-cluster pairs i < j (the agreement objective)."""
    labels = partition.labels if isinstance(partition, Partition) else partition
    labels = check_labels(labels, g.n)
    total = 0.0
    for c in np.unique(labels):
        members = np.flatnonzero(labels == c)
        if members.size > 1:
            total += g.weights[np.ix_(members, members)].sum() / 2.0
    return float(total)


def read_weight_csv(path, has_header: bool = False) -> SignedGraph:
    """Read a dense weight matrix CSV into a graph (symmetrizing as needed)."""
    matrix, _ = csvio.read_numeric_csv(path, has_header=has_header)
    return from_dense(matrix)


def write_weight_csv(path, g: SignedGraph) -> None:
    csvio.write_numeric_csv(path, g.weights)
