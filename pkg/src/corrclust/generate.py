"""Synthetic balanced signed graphs with planted partitions and size skew.

Generated graphs are complete by default: every intra-cluster weight is
drawn from a positive range and every inter-cluster weight from a negative
range, so at zero noise the planted partition is the agreement maximizer.
Three size profiles control cluster-size inequality, from uniform to one
dominant cluster plus singletons.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

import numpy as np

from .graph import Partition, SignedGraph
from .validation import check_seed

PROFILES = ("uniform", "moderate", "high_skew")

# Geometric progression ratio for the moderate profile, sized so the rounded
# max/min cluster-size ratio lands near 3.95 at (n=170, k=5).
MODERATE_RATIO_DEFAULT = 1.43


@dataclass(frozen=True)
class GenSpec:
    """Recipe for one synthetic instance."""

    n: int
    k: int
    profile: str | Sequence[int] = "uniform"
    intra_range: tuple[float, float] = (0.2, 1.0)
    inter_range: tuple[float, float] = (-1.0, -0.2)
    noise_flip_prob: float = 0.0
    density: float = 1.0
    seed: int = 0
    moderate_ratio: float = MODERATE_RATIO_DEFAULT

    def __post_init__(self):
        if self.n < 1:
            raise ValueError("n must be positive")
        if not 1 <= self.k <= self.n:
            raise ValueError(f"k={self.k} infeasible for n={self.n}")
        lo_p, hi_p = self.intra_range
        if not (0 < lo_p <= hi_p <= 1):
            raise ValueError("intra_range must lie in (0, 1] with lo <= hi")
        lo_n, hi_n = self.inter_range
        if not (-1 <= lo_n <= hi_n < 0):
            raise ValueError("inter_range must lie in [-1, 0) with lo <= hi")
        if not 0 <= self.noise_flip_prob < 0.5:
            raise ValueError("noise_flip_prob must be in [0, 0.5)")
        if not 0 < self.density <= 1:
            raise ValueError("density must be in (0, 1]")
        if self.moderate_ratio <= 1:
            raise ValueError("moderate_ratio must exceed 1")
        check_seed(self.seed)
        if not isinstance(self.profile, str):
            sizes = tuple(int(s) for s in self.profile)
            if len(sizes) != self.k or any(s < 1 for s in sizes) or sum(sizes) != self.n:
                raise ValueError("explicit sizes must be k positive integers summing to n")
            object.__setattr__(self, "profile", sizes)
        elif self.profile not in PROFILES:
            raise ValueError(f"profile must be one of {PROFILES} or explicit sizes")


def make_sizes(
    n: int,
    k: int,
    profile: str | Sequence[int] = "uniform",
    seed: int = 0,
    moderate_ratio: float = MODERATE_RATIO_DEFAULT,
) -> list[int]:
    """Cluster sizes for a profile (deterministic; seed kept for API parity).

    uniform: sizes differ by at most 1.  high_skew: one cluster of
    n - (k - 1) plus k - 1 singletons.  moderate: sizes proportional to a
    geometric progression, rounded to sum n by largest remainder.
    """
    if not 1 <= k <= n:
        raise ValueError(f"k={k} infeasible for n={n}")
    if not isinstance(profile, str):
        sizes = [int(s) for s in profile]
        if len(sizes) != k or any(s < 1 for s in sizes) or sum(sizes) != n:
            raise ValueError("explicit sizes must be k positive integers summing to n")
        return sizes
    if profile == "uniform":
        base, extra = divmod(n, k)
        return [base + 1 if i < extra else base for i in range(k)]
    if profile == "high_skew":
        return [n - (k - 1)] + [1] * (k - 1)
    if profile == "moderate":
        # Reserve one node per cluster, then spread the rest geometrically
        # (largest-remainder rounding keeps the total exact).
        weights = np.array([moderate_ratio**i for i in range(k)])
        raw = (n - k) * weights / weights.sum()
        extra = np.floor(raw).astype(int)
        shortfall = (n - k) - int(extra.sum())
        for idx in np.argsort(-(raw - np.floor(raw)))[:shortfall]:
            extra[idx] += 1
        return (1 + extra).tolist()
    raise ValueError(f"profile must be one of {PROFILES} or explicit sizes")


def generate(spec: GenSpec) -> tuple[SignedGraph, Partition]:
    """Draw one instance; bit-identical for identical specs."""
    rng = np.random.default_rng(spec.seed)
    sizes = make_sizes(spec.n, spec.k, spec.profile, spec.seed, spec.moderate_ratio)
    labels = np.repeat(np.arange(spec.k, dtype=np.int64), sizes)
    n = spec.n
    same = labels[:, None] == labels[None, :]
    u = rng.random((n, n))
    lo_p, hi_p = spec.intra_range
    lo_n, hi_n = spec.inter_range
    w = np.where(same, lo_p + u * (hi_p - lo_p), lo_n + u * (hi_n - lo_n))
    if spec.noise_flip_prob > 0:
        flips = rng.random((n, n)) < spec.noise_flip_prob
        w = np.where(flips, -w, w)
    if spec.density < 1:
        kept = rng.random((n, n)) < spec.density
        w = np.where(kept, w, 0.0)
    w = np.triu(w, k=1)
    w = w + w.T
    graph = SignedGraph(weights=w, node_ids=np.arange(n, dtype=np.int64))
    return graph, Partition(labels=labels)
