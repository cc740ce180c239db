"""Experiment runner: one clustering run -> report; seeded sweeps -> rows.

Every run is reproducible from its report: the config echo carries the
method, solver settings and seeds, and dataset files are identified by
content hash.  Benchmark sweeps derive one seed per cell from the master
seed, so results are stable no matter how many workers execute them.
"""

from __future__ import annotations

import hashlib
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass

import numpy as np

from . import __version__ as _version
from .baselines import agglomerative, diana, pam, select_k, to_dissimilarity
from .divisive import ClusterConfig, cluster, partition_to_json
from .generate import GenSpec, PROFILES, generate
from .graph import Partition, SignedGraph, intra_agreement
from .metrics import report as metric_report
from .qubo import SaConfig

CLUSTER_METHODS = ("gcsq", "diana", "agglomerative", "pam")
EXCLUDED_METHODS = {
    "kmeans": "not implemented (requires a coordinate embedding)",
    "spectral": "not implemented (requires an eigensolver pipeline)",
}


@dataclass(frozen=True)
class ExperimentReport:
    """Self-contained record of one clustering run."""

    method: str
    params: dict
    dataset: dict
    result: dict
    metrics: dict
    timings: dict
    version: str = _version

    def to_dict(self) -> dict:
        return asdict(self)


def file_digest(path) -> str:
    h = hashlib.sha256()
    with open(path, "rb") as fh:
        for block in iter(lambda: fh.read(65536), b""):
            h.update(block)
    return h.hexdigest()


def run_method(
    g: SignedGraph,
    method: str,
    k: int | None = None,
    select_range=None,
    solver: str = "auto",
    sa: SaConfig | None = None,
    tol: float = 1e-9,
    seed: int = 0,
    record_trace: bool = False,
):
    """Run one clustering method on ``g``.

    gcsq ignores k entirely (callers must not pass one); classical methods
    need either k or a selection range, in which case the silhouette-best k
    is chosen.  Returns (partition, config echo, trace-or-None).
    """
    if method == "gcsq":
        if k is not None or select_range is not None:
            raise ValueError("gcsq discovers k; do not pass --k or --select-k")
        cfg = ClusterConfig(
            backend=solver,
            tol=tol,
            record_trace=record_trace,
            sa=sa if sa is not None else SaConfig(seed=seed),
        )
        partition, trace = cluster(g, cfg)
        params = {"solver": solver, "tol": tol, "seed": cfg.sa.seed}
        return partition, params, (trace if record_trace else None)
    if method in EXCLUDED_METHODS:
        raise ValueError(f"method {method!r} is {EXCLUDED_METHODS[method]}")
    if method not in CLUSTER_METHODS:
        raise ValueError(
            f"unknown method {method!r}; known: {', '.join(CLUSTER_METHODS)}"
        )
    d = to_dissimilarity(g)
    if k is None and select_range is None:
        raise ValueError(f"method {method!r} requires k or a selection range")
    if k is not None and select_range is not None:
        raise ValueError("pass either k or a selection range, not both")
    if select_range is not None:
        chosen_k, partition = select_k(d, method, select_range, seed=seed)
        params = {"selected_k": chosen_k, "k_range": list(select_range), "seed": seed}
        return partition, params, None
    if method == "diana":
        partition = diana(d, k)
    elif method == "agglomerative":
        partition = agglomerative(d, k)
    else:
        partition = pam(d, k, seed=seed)
    return partition, {"k": k, "seed": seed}, None


def build_report(
    g: SignedGraph,
    partition: Partition,
    method: str,
    params: dict,
    dataset: dict,
    timings: dict,
    truth=None,
    trace=None,
) -> ExperimentReport:
    metrics = metric_report(g, partition, truth=truth).to_dict()
    result = partition_to_json(partition, intra_agreement(g, partition), trace)
    return ExperimentReport(
        method=method,
        params=params,
        dataset=dataset,
        result=result,
        metrics=metrics,
        timings=timings,
    )


@dataclass(frozen=True)
class BenchmarkPlan:
    """Sweep definition: profiles x k values x replicate seeds."""

    n: int = 60
    k_values: tuple[int, ...] = (5, 10, 20)
    profiles: tuple[str, ...] = PROFILES
    seeds: int = 10
    noise: float = 0.0
    solver: str = "auto"
    master_seed: int = 0
    methods: tuple[str, ...] = CLUSTER_METHODS
    sa_restarts: int = 8
    sa_sweeps: int | None = None

    def cells(self) -> list[tuple[str, int, int]]:
        return [
            (profile, k, rep)
            for profile in self.profiles
            for k in self.k_values
            for rep in range(self.seeds)
        ]


def _cell_seed(plan: BenchmarkPlan, profile: str, k: int, rep: int, stream: int) -> int:
    profile_idx = list(plan.profiles).index(profile)
    ss = np.random.SeedSequence([plan.master_seed, profile_idx, k, rep, stream])
    return int(ss.generate_state(1)[0])


def _run_cell(args) -> list[dict]:
    plan, profile, k, rep = args
    gen_seed = _cell_seed(plan, profile, k, rep, 0)
    solver_seed = _cell_seed(plan, profile, k, rep, 1)
    spec = GenSpec(n=plan.n, k=k, profile=profile, noise_flip_prob=plan.noise, seed=gen_seed)
    g, truth = generate(spec)
    rows = []
    for method in plan.methods:
        t0 = time.perf_counter()
        if method == "gcsq":
            partition, _, _ = run_method(
                g,
                "gcsq",
                solver=plan.solver,
                sa=SaConfig(
                    seed=solver_seed,
                    restarts=plan.sa_restarts,
                    sweeps=plan.sa_sweeps,
                ),
            )
        else:
            # Classical methods get the true k, matching the evaluation protocol.
            partition, _, _ = run_method(g, method, k=k, seed=solver_seed)
        elapsed = time.perf_counter() - t0
        rep_metrics = metric_report(g, partition, truth=truth)
        rows.append(
            {
                "profile": profile,
                "k": k,
                "seed": rep,
                "method": method,
                "nmi": rep_metrics.nmi,
                "modularity": rep_metrics.modularity,
                "runtime": elapsed,
            }
        )
    return rows


def benchmark_rows(plan: BenchmarkPlan, jobs: int = 1) -> list[dict]:
    """Run the sweep and return long-format rows, stable in cell order."""
    cells = plan.cells()
    args = [(plan, profile, k, rep) for profile, k, rep in cells]
    if jobs <= 1:
        nested = [_run_cell(a) for a in args]
    else:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            nested = list(pool.map(_run_cell, args))
    return [row for rows in nested for row in rows]
