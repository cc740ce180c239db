"""Recursive divisive correlation clustering driven by bipartition QUBOs.

Starting from a single cluster holding every node, the engine repeatedly pops
a cluster from a FIFO queue, solves the bipartition QUBO on its induced
subgraph, and accepts the split only when the cut is strictly negative
(below -tol): splitting along a negative cut removes disagreement and raises
intra-cluster agreement by exactly -cut, while splitting along a non-negative
cut would destroy agreement.  Clusters whose best split is rejected are
final.  The number of clusters is therefore discovered, never prescribed.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

import numpy as np

from .graph import Bipartition, Partition, SignedGraph, cut_weight, subgraph
from .qubo import SaConfig, build_bipartition_qubo, solve


@dataclass(frozen=True)
class ClusterConfig:
    """Engine knobs: solver backend, stop tolerance, trace recording."""

    backend: str = "auto"
    min_split_size: int = 2
    tol: float = 1e-9
    record_trace: bool = False
    sa: SaConfig = field(default_factory=SaConfig)
    exact_cap: int = 24

    def __post_init__(self):
        if self.min_split_size < 2:
            raise ValueError("min_split_size must be >= 2")
        if self.tol < 0:
            raise ValueError("tol must be >= 0")


@dataclass(frozen=True)
class SplitStep:
    """One attempted split: which nodes, the chosen sides, cut, verdict."""

    nodes: tuple[int, ...]
    mask: tuple[int, ...]
    cut: float
    accepted: bool


def split_once(g: SignedGraph, cfg: ClusterConfig | None = None, _solve_seed: int | None = None):
    """Solve one bipartition QUBO on ``g``.

    Returns (Bipartition, cut value, accepted); accepted is True iff the cut
    is below -tol and both sides are non-empty.
    """
    cfg = cfg if cfg is not None else ClusterConfig()
    if g.n < 2:
        raise ValueError("cannot split a graph with fewer than 2 nodes")
    problem = build_bipartition_qubo(g)
    sa = cfg.sa if _solve_seed is None else _reseeded(cfg.sa, _solve_seed)
    result = solve(problem, backend=cfg.backend, config=sa, exact_cap=cfg.exact_cap)
    bipartition = Bipartition(mask=result.assignment)
    cut = cut_weight(g, bipartition)
    a, b = bipartition.side_a(), bipartition.side_b()
    accepted = bool(cut < -cfg.tol) and a.size > 0 and b.size > 0
    return bipartition, cut, accepted


def cluster(g: SignedGraph, cfg: ClusterConfig | None = None):
    """Run the full divisive recursion over ``g``.

    Returns (Partition, trace).  The trace lists every attempted split in
    queue order; it is empty unless cfg.record_trace is set.  Deterministic
    given the solver seed.  At most 2k-1 QUBO solves occur for a k-cluster
    result.
    """
    cfg = cfg if cfg is not None else ClusterConfig()
    if g.n < 1:
        raise ValueError("graph must have at least one node")
    queue: deque[np.ndarray] = deque([np.arange(g.n, dtype=np.int64)])
    final_clusters: list[np.ndarray] = []
    trace: list[SplitStep] = []
    solves = 0
    accepted_splits = 0
    while queue:
        members = queue.popleft()
        if members.size < cfg.min_split_size:
            final_clusters.append(members)
            continue
        sub = subgraph(g, members)
        bipartition, cut, accepted = split_once(sub, cfg, _solve_seed=solves)
        solves += 1
        if cfg.record_trace:
            trace.append(
                SplitStep(
                    nodes=tuple(members.tolist()),
                    mask=tuple(bipartition.mask.tolist()),
                    cut=cut,
                    accepted=accepted,
                )
            )
        if accepted:
            accepted_splits += 1
            if accepted_splits > g.n - 1:
                raise RuntimeError("divisive recursion exceeded n-1 accepted splits")
            queue.append(members[bipartition.side_a()])
            queue.append(members[bipartition.side_b()])
        else:
            final_clusters.append(members)
    labels = np.empty(g.n, dtype=np.int64)
    for cid, members in enumerate(final_clusters):
        labels[members] = cid
    return Partition(labels=labels), trace


def _reseeded(sa: SaConfig, solve_index: int) -> SaConfig:
    """Derive an independent per-solve seed so repeated solves do not share streams."""
    derived = int(np.random.SeedSequence([sa.seed, solve_index]).generate_state(1)[0])
    return SaConfig(
        sweeps=sa.sweeps,
        restarts=sa.restarts,
        t_start=sa.t_start,
        t_final=sa.t_final,
        seed=derived,
    )


def partition_to_json(partition: Partition, agreement: float, trace: list[SplitStep] | None = None) -> dict:
    """JSON-ready dict: {labels, k, agreement, trace?}."""
    out: dict = {
        "labels": partition.labels.tolist(),
        "k": partition.k,
        "agreement": agreement,
    }
    if trace is not None:
        out["trace"] = [
            {
                "nodes": list(step.nodes),
                "mask": list(step.mask),
                "cut": step.cut,
                "accepted": step.accepted,
            }
            for step in trace
        ]
    return out
