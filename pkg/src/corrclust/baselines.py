"""Classical comparison methods on the dissimilarity transform d = (1 - w) / 2.

DIANA, average-linkage agglomerative and PAM all need non-negative
dissimilarities, so signed weights in [-1, 1] are mapped to [0, 1] first.
All three return exactly k non-empty clusters and are deterministic (PAM's
BUILD+SWAP variant has no random component; the seed argument exists for API
symmetry with stochastic methods).
"""

from __future__ import annotations

import warnings

import numpy as np

from .graph import Partition, SignedGraph
from .validation import check_labels, check_square_matrix


def to_dissimilarity(g: SignedGraph) -> np.ndarray:
    """Map signed weights to dissimilarities, clamping out-of-range weights."""
    w = g.weights
    if w.size and (w.min() < -1.0 or w.max() > 1.0):
        warnings.warn("weights outside [-1, 1] clamped before dissimilarity transform")
        w = np.clip(w, -1.0, 1.0)
    d = (1.0 - w) / 2.0
    np.fill_diagonal(d, 0.0)
    return d


def _check_dissimilarity(d) -> np.ndarray:
    d = check_square_matrix(d, "dissimilarity matrix")
    if not np.allclose(d, d.T):
        raise ValueError("dissimilarity matrix must be symmetric")
    if np.any(d < 0):
        raise ValueError("dissimilarities must be non-negative")
    return d


def _check_k(k: int, n: int) -> int:
    if not 1 <= k <= n:
        raise ValueError(f"k={k} out of range for {n} points")
    return int(k)


def diana(d, k: int) -> Partition:
    """Divisive clustering by splintering off maximally dissimilar points.

    Repeatedly splits the cluster with the largest diameter: the splinter
    group is seeded with the point of maximal average dissimilarity to its
    cluster mates and grows by migrating any point whose average
    dissimilarity to the splinter side is smaller than to the remaining side.
    Ties break toward the lowest node index.
    """
    d = _check_dissimilarity(d)
    n = d.shape[0]
    k = _check_k(k, n)
    clusters: list[list[int]] = [list(range(n))]
    while len(clusters) < k:
        diameters = [
            d[np.ix_(c, c)].max() if len(c) > 1 else -1.0 for c in clusters
        ]
        # Widest cluster splits next; ties go to the one holding the lowest node.
        target = min(
            range(len(clusters)), key=lambda t: (-diameters[t], clusters[t][0])
        )
        old = clusters[target]
        splinter, remainder = _splinter_split(d, old)
        clusters[target] = remainder
        clusters.append(splinter)
    return _clusters_to_partition(clusters, n)


def _splinter_split(d: np.ndarray, members: list[int]) -> tuple[list[int], list[int]]:
    idx = np.asarray(members)
    sub = d[np.ix_(idx, idx)]
    avg = sub.sum(axis=1) / (len(members) - 1)
    seed = int(np.argmax(avg))
    splinter = [members[seed]]
    remainder = [m for i, m in enumerate(members) if i != seed]
    while len(remainder) > 1:
        rem = np.asarray(remainder)
        spl = np.asarray(splinter)
        to_rem = d[np.ix_(rem, rem)].sum(axis=1) / (len(remainder) - 1)
        to_spl = d[np.ix_(rem, spl)].mean(axis=1)
        gain = to_rem - to_spl
        best = int(np.argmax(gain))
        if gain[best] <= 0:
            break
        splinter.append(remainder.pop(best))
    return sorted(splinter), remainder


def agglomerative(d, k: int) -> Partition:
    """Average-linkage (Lance-Williams) merging from singletons down to k.

    Cluster slots are indexed by their smallest member, and the merge scan
    runs in ascending (i, j) order, so ties resolve to the lexicographically
    smallest pair.
    """
    d = _check_dissimilarity(d)
    n = d.shape[0]
    k = _check_k(k, n)
    dist = d.astype(np.float64, copy=True)
    np.fill_diagonal(dist, np.inf)
    active = np.ones(n, dtype=bool)
    sizes = np.ones(n, dtype=np.int64)
    membership = [[i] for i in range(n)]
    for _ in range(n - k):
        masked = np.where(active[:, None] & active[None, :], dist, np.inf)
        masked[np.tril_indices(n)] = np.inf
        i, j = np.unravel_index(int(np.argmin(masked)), masked.shape)
        # Lance-Williams update for average linkage into slot i.
        others = active.copy()
        others[[i, j]] = False
        merged = (sizes[i] * dist[i, others] + sizes[j] * dist[j, others]) / (
            sizes[i] + sizes[j]
        )
        dist[i, others] = merged
        dist[others, i] = merged
        sizes[i] += sizes[j]
        active[j] = False
        membership[i].extend(membership[j])
    clusters = [membership[i] for i in range(n) if active[i]]
    return _clusters_to_partition(clusters, n)


def pam(d, k: int, seed: int = 0) -> Partition:
    """Partitioning Around Medoids: greedy BUILD then first-improvement SWAP.

    SWAP scans (medoid, candidate) pairs in ascending index order, applies
    the first cost-reducing swap, and restarts until no swap improves.
    """
    d = _check_dissimilarity(d)
    n = d.shape[0]
    k = _check_k(k, n)
    medoids = _pam_build(d, k)
    medoids = _pam_swap(d, medoids)
    return Partition(labels=_assign_to_medoids(d, medoids))


def _pam_build(d: np.ndarray, k: int) -> list[int]:
    n = d.shape[0]
    first = int(np.argmin(d.sum(axis=1)))
    medoids = [first]
    nearest = d[:, first].copy()
    while len(medoids) < k:
        gains = np.maximum(nearest[None, :] - d, 0.0).sum(axis=1)
        gains[medoids] = -np.inf
        cand = int(np.argmax(gains))
        medoids.append(cand)
        nearest = np.minimum(nearest, d[:, cand])
    return sorted(medoids)

def _pam_swap(d: np.ndarray, medoids: list[int]) -> list[int]:
    n = d.shape[0]
    medoids = sorted(medoids)
    current_cost = _pam_cost(d, medoids)
    improved = True
    while improved:
        improved = False
        non_medoids = [h for h in range(n) if h not in medoids]
        for mi in range(len(medoids)):
            for h in non_medoids:
                trial = sorted(medoids[:mi] + medoids[mi + 1 :] + [h])
                cost = _pam_cost(d, trial)
                if cost < current_cost - 1e-12:
                    medoids = trial
                    current_cost = cost
                    improved = True
                    break
            if improved:
                break
    return medoids


def _pam_cost(d: np.ndarray, medoids: list[int]) -> float:
    return float(d[:, medoids].min(axis=1).sum())


def _assign_to_medoids(d: np.ndarray, medoids: list[int]) -> np.ndarray:
    labels = np.argmin(d[:, medoids], axis=1).astype(np.int64)
    # A medoid always belongs to its own cluster, even under zero-distance ties.
    for ci, m in enumerate(medoids):
        labels[m] = ci
    return labels


def silhouette_score(d, partition) -> float:
    """Mean silhouette over nodes; singleton members contribute 0."""
    d = _check_dissimilarity(d)
    labels = partition.labels if isinstance(partition, Partition) else check_labels(partition)
    labels = check_labels(labels, d.shape[0])
    uniq = np.unique(labels)
    if uniq.size < 2:
        raise ValueError("silhouette requires at least 2 clusters")
    n = d.shape[0]
    scores = np.zeros(n)
    members = {c: np.flatnonzero(labels == c) for c in uniq}
    for i in range(n):
        own = members[labels[i]]
        if own.size == 1:
            continue
        a = d[i, own].sum() / (own.size - 1)
        b = min(d[i, members[c]].mean() for c in uniq if c != labels[i])
        denom = max(a, b)
        scores[i] = 0.0 if denom == 0 else (b - a) / denom
    return float(scores.mean())


def select_k(d, method, k_range, seed: int = 0) -> tuple[int, Partition]:
    """Run ``method`` for each k and return the silhouette argmax (ties -> smaller k).

    ``method`` is "diana" | "agglomerative" | "pam" or any callable
    (d, k, seed) -> Partition.  All k must be >= 2 (silhouette is undefined
    for a single cluster).
    """
    d = _check_dissimilarity(d)
    ks = sorted(set(int(k) for k in k_range))
    if not ks:
        raise ValueError("k_range must be non-empty")
    if ks[0] < 2:
        raise ValueError("select_k requires k >= 2")
    fn = _method_callable(method)
    best: tuple[int, Partition] | None = None
    best_score = -np.inf
    for k in ks:
        part = fn(d, k, seed)
        score = silhouette_score(d, part)
        if score > best_score:
            best_score = score
            best = (k, part)
    assert best is not None
    return best


def _method_callable(method):
    if callable(method):
        return method
    table = {
        "diana": lambda d, k, seed: diana(d, k),
        "agglomerative": lambda d, k, seed: agglomerative(d, k),
        "pam": lambda d, k, seed: pam(d, k, seed),
    }
    try:
        return table[method]
    except KeyError:
        raise ValueError(
            f"unknown baseline {method!r}; known: {', '.join(sorted(table))}"
        ) from None


def _clusters_to_partition(clusters: list[list[int]], n: int) -> Partition:
    labels = np.empty(n, dtype=np.int64)
    for cid, members in enumerate(clusters):
        labels[list(members)] = cid
    return Partition(labels=labels)
