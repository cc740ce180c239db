"""Clustering evaluation: NMI, signed modularity, size inequality, agreement."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graph import Partition, SignedGraph, intra_agreement
from .validation import check_labels

_NMI_NORMS = ("sqrt", "min", "max", "arithmetic")


@dataclass(frozen=True)
class MetricReport:
    """Bundle of evaluation metrics for one clustering run."""

    modularity: float
    gini: float
    size_ratio: float
    agreement: float
    k: int
    nmi: float | None = None

    def to_dict(self) -> dict:
        out = {
            "modularity": self.modularity,
            "gini": self.gini,
            "size_ratio": self.size_ratio,
            "agreement": self.agreement,
            "k": self.k,
        }
        if self.nmi is not None:
            out["nmi"] = self.nmi
        return out


def _as_labels(p) -> np.ndarray:
    labels = p.labels if isinstance(p, Partition) else check_labels(p)
    return check_labels(labels)


def nmi(a, b, normalization: str = "sqrt") -> float:
    """Normalized mutual information between two partitions, in [0, 1].

    Mutual information of the label contingency table (natural log),
    normalized by sqrt(H(a) * H(b)) by default; "min", "max" and
    "arithmetic" normalizations are also available.  When both partitions
    are single-cluster the score is 1; when exactly one is, it is 0.
    """
    if normalization not in _NMI_NORMS:
        raise ValueError(f"normalization must be one of {_NMI_NORMS}")
    la, lb = _as_labels(a), _as_labels(b)
    if la.size != lb.size:
        raise ValueError("partitions must have equal length")
    n = la.size
    _, ia = np.unique(la, return_inverse=True)
    _, ib = np.unique(lb, return_inverse=True)
    ka, kb = int(ia.max()) + 1, int(ib.max()) + 1
    contingency = np.zeros((ka, kb), dtype=np.float64)
    np.add.at(contingency, (ia, ib), 1.0)
    pa = contingency.sum(axis=1) / n
    pb = contingency.sum(axis=0) / n
    ha = _entropy(pa)
    hb = _entropy(pb)
    if ha == 0.0 and hb == 0.0:
        return 1.0
    if ha == 0.0 or hb == 0.0:
        return 0.0
    pij = contingency / n
    mask = pij > 0
    mi = float(
        np.sum(pij[mask] * np.log(pij[mask] / np.outer(pa, pb)[mask]))
    )
    mi = max(mi, 0.0)
    if normalization == "sqrt":
        denom = float(np.sqrt(ha * hb))
    elif normalization == "min":
        denom = min(ha, hb)
    elif normalization == "max":
        denom = max(ha, hb)
    else:
        denom = (ha + hb) / 2.0
    return mi / denom


def _entropy(p: np.ndarray) -> float:
    nz = p[p > 0]
    return float(-np.sum(nz * np.log(nz)))


def modularity(g: SignedGraph, p) -> float:
    """Newman modularity extended to signed weights.

    Weights split into positive and negative parts; each part's modularity
    Q = sum_c (e_cc - a_c^2) is computed with that part's total weight as
    normalizer, and the parts combine as (W+ * Q+ - W- * Q-) / (W+ + W-).
    Reduces to plain Newman Q on non-negative graphs.  Undefined (raises)
    on an all-zero graph.
    """
    labels = _as_labels(p)
    if labels.size != g.n:
        raise ValueError("partition length does not match graph size")
    w = g.weights
    w_pos = np.where(w > 0, w, 0.0)
    w_neg = np.where(w < 0, -w, 0.0)
    total_pos = float(w_pos.sum())
    total_neg = float(w_neg.sum())
    if total_pos == 0.0 and total_neg == 0.0:
        raise ValueError("modularity undefined for a graph with no nonzero edge")
    q_pos = _newman(w_pos, labels, total_pos) if total_pos > 0 else 0.0
    q_neg = _newman(w_neg, labels, total_neg) if total_neg > 0 else 0.0
    return (total_pos * q_pos - total_neg * q_neg) / (total_pos + total_neg)


def _newman(w: np.ndarray, labels: np.ndarray, total: float) -> float:
    q = 0.0
    for c in np.unique(labels):
        members = np.flatnonzero(labels == c)
        e_cc = w[np.ix_(members, members)].sum() / total
        a_c = w[members, :].sum() / total
        q += e_cc - a_c * a_c
    return float(q)


def gini(sizes) -> float:
    """Mean absolute size difference over 2 * mean: 0 for uniform sizes."""
    s = np.asarray(sizes, dtype=np.float64)
    if s.size == 0:
        raise ValueError("sizes must be non-empty")
    if np.any(s <= 0):
        raise ValueError("sizes must be positive")
    n = s.size
    mu = s.mean()
    return float(np.abs(s[:, None] - s[None, :]).sum() / (2.0 * n * n * mu))


def size_ratio(sizes) -> float:
    """Largest cluster size divided by smallest."""
    s = np.asarray(sizes, dtype=np.float64)
    if s.size == 0:
        raise ValueError("sizes must be non-empty")
    if np.any(s <= 0):
        raise ValueError("sizes must be positive")
    return float(s.max() / s.min())


def report(g: SignedGraph, p, truth=None) -> MetricReport:
    """Bundle all metrics; NMI only when ground truth is supplied."""
    partition = p if isinstance(p, Partition) else Partition(labels=check_labels(p))
    sizes = partition.cluster_sizes()
    return MetricReport(
        modularity=modularity(g, partition),
        gini=gini(sizes),
        size_ratio=size_ratio(sizes),
        agreement=intra_agreement(g, partition),
        k=partition.k,
        nmi=None if truth is None else nmi(partition, truth),
    )
