"""Bipartition QUBO construction and interchangeable solver backends.

The bipartition objective minimized here is the cut weight of the split: for
a graph with weights w, the QUBO has linear terms q_i = sum_j w_ij and
quadratic terms q_ij = -2 w_ij, so that for every binary assignment x the
QUBO value equals the weight of edges crossing the (x=1, x=0) bipartition.
Solvers therefore report cut values; callers convert to agreement gains via
the decomposition identity.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from numba import njit

from .graph import SignedGraph
from .validation import check_mask, check_seed

EXACT_CAP_DEFAULT = 24


@dataclass(frozen=True)
class QuboProblem:
    """Minimize sum_i q_i x_i + sum_{i<j} q_ij x_i x_j over x in {0,1}^n."""

    linear: np.ndarray
    quadratic: dict[tuple[int, int], float]

    def __post_init__(self):
        lin = np.asarray(self.linear, dtype=np.float64)
        if lin.ndim != 1 or lin.size == 0:
            raise ValueError("linear coefficients must be a non-empty vector")
        if not np.all(np.isfinite(lin)):
            raise ValueError("linear coefficients must be finite")
        n = lin.size
        for (i, j), v in self.quadratic.items():
            if not (0 <= i < j < n):
                raise ValueError(f"quadratic key ({i}, {j}) invalid for n={n}")
            if not math.isfinite(v):
                raise ValueError(f"quadratic coefficient ({i}, {j}) not finite")
        object.__setattr__(self, "linear", lin)
        lin.setflags(write=False)

    @property
    def n(self) -> int:
        return self.linear.size

    def upper_matrix(self) -> np.ndarray:
        """Dense upper-triangular quadratic matrix (cached)."""
        cached = getattr(self, "_upper", None)
        if cached is None:
            cached = np.zeros((self.n, self.n), dtype=np.float64)
            for (i, j), v in self.quadratic.items():
                cached[i, j] = v
            cached.setflags(write=False)
            object.__setattr__(self, "_upper", cached)
        return cached

    def symmetric_matrix(self) -> np.ndarray:
        upper = self.upper_matrix()
        return upper + upper.T

    def max_coefficient(self) -> float:
        m = float(np.max(np.abs(self.linear))) if self.n else 0.0
        if self.quadratic:
            m = max(m, max(abs(v) for v in self.quadratic.values()))
        return m


@dataclass(frozen=True)
class SolverResult:
    """Best assignment found, its objective, and solver diagnostics."""

    assignment: np.ndarray
    objective: float
    evaluations: int
    seed: int | None = None

    def __post_init__(self):
        arr = np.asarray(self.assignment, dtype=np.uint8)
        object.__setattr__(self, "assignment", arr)
        arr.setflags(write=False)


@dataclass(frozen=True)
class SaConfig:
    """Simulated annealing schedule.

    ``sweeps``/``t_start``/``t_final`` may be None, in which case they are
    derived from the problem at solve time: sweeps = 100 * n, t_start = max
    absolute coefficient, t_final = 1e-3 * t_start.  The schedule decays
    geometrically from t_start to t_final.
    """

    sweeps: int | None = None
    restarts: int = 8
    t_start: float | None = None
    t_final: float | None = None
    seed: int = 0

    def __post_init__(self):
        if self.sweeps is not None and self.sweeps < 1:
            raise ValueError("sweeps must be >= 1")
        if self.restarts < 1:
            raise ValueError("restarts must be >= 1")
        if self.t_start is not None and self.t_final is not None:
            if not (self.t_start > self.t_final > 0):
                raise ValueError("require t_start > t_final > 0")
        elif self.t_start is not None and self.t_start <= 0:
            raise ValueError("t_start must be positive")
        elif self.t_final is not None and self.t_final <= 0:
            raise ValueError("t_final must be positive")
        check_seed(self.seed)

    def resolve(self, problem: QuboProblem) -> tuple[int, float, float]:
        sweeps = self.sweeps if self.sweeps is not None else 100 * problem.n
        t0 = self.t_start
        if t0 is None:
            t0 = problem.max_coefficient()
            if t0 <= 0.0:
                t0 = 1.0
        tf = self.t_final if self.t_final is not None else 1e-3 * t0
        if not (t0 > tf > 0):
            raise ValueError(f"resolved schedule invalid: t_start={t0}, t_final={tf}")
        return sweeps, t0, tf


def build_bipartition_qubo(g: SignedGraph) -> QuboProblem:
    """QUBO whose value at any assignment equals the cut weight of the split."""
    w = g.weights
    linear = w.sum(axis=1)
    quadratic: dict[tuple[int, int], float] = {}
    iu, ju = np.triu_indices(g.n, k=1)
    for i, j in zip(iu.tolist(), ju.tolist()):
        v = w[i, j]
        if v != 0.0:
            quadratic[(i, j)] = -2.0 * v
    return QuboProblem(linear=linear, quadratic=quadratic)


def evaluate(problem: QuboProblem, assignment) -> float:
    """Exact objective value of ``assignment``."""
    x = check_mask(assignment, problem.n).astype(np.float64)
    upper = problem.upper_matrix()
    return float(x @ problem.linear + x @ upper @ x)


def _assignment_bits(values: np.ndarray, n: int) -> np.ndarray:
    """Rows of the binary expansions of ``values`` over n bits (LSB first)."""
    return ((values[:, None] >> np.arange(n)) & 1).astype(np.float64)


def solve_exact(problem: QuboProblem, cap: int = EXACT_CAP_DEFAULT) -> SolverResult:
    """Globally minimal assignment by enumeration.

    Assumes a complement-symmetric objective (as produced by
    ``build_bipartition_qubo``, whose value is invariant under flipping all
    bits), which allows fixing x_0 = 0 and searching 2^(n-1) assignments.
    """
    n = problem.n
    if n > cap:
        raise ValueError(f"problem size {n} exceeds exact-solver cap {cap}")
    lin = problem.linear
    upper = problem.upper_matrix()
    total = 1 << (n - 1)
    best_obj = math.inf
    best_val = 0
    chunk = 1 << 16
    for start in range(0, total, chunk):
        vals = np.arange(start, min(start + chunk, total), dtype=np.int64)
        # x_0 is pinned to 0: enumerate the remaining n-1 bits.
        bits = np.zeros((vals.size, n), dtype=np.float64)
        if n > 1:
            bits[:, 1:] = _assignment_bits(vals, n - 1)
        objs = bits @ lin + np.einsum("ri,ri->r", bits @ upper, bits)
        k = int(np.argmin(objs))
        if objs[k] < best_obj:
            best_obj = float(objs[k])
            best_val = int(vals[k])
    assignment = np.zeros(n, dtype=np.uint8)
    if n > 1:
        assignment[1:] = (best_val >> np.arange(n - 1)) & 1
    objective = evaluate(problem, assignment)
    return SolverResult(assignment=assignment, objective=objective, evaluations=total)


@njit(cache=True)
def _sa_restart(lin, qsym, sweeps, t0, t_final, seed):  # pragma: no cover
    n = lin.shape[0]
    np.random.seed(seed)
    x = np.empty(n, dtype=np.uint8)
    for i in range(n):
        x[i] = 1 if np.random.random() < 0.5 else 0
    # Local field f_i = sum_j qsym[i, j] * x_j, updated incrementally per flip.
    f = np.zeros(n)
    for i in range(n):
        for j in range(n):
            if x[j] == 1:
                f[i] += qsym[i, j]
    obj = 0.0
    for i in range(n):
        if x[i] == 1:
            obj += lin[i] + 0.5 * f[i]
    best_obj = obj
    best_x = x.copy()
    order = np.arange(n)
    ratio = 1.0 if sweeps <= 1 else (t_final / t0) ** (1.0 / (sweeps - 1))
    temp = t0
    for _ in range(sweeps):
        # Fisher-Yates shuffle of the proposal order.
        for a in range(n - 1, 0, -1):
            b = np.random.randint(0, a + 1)
            tmp = order[a]
            order[a] = order[b]
            order[b] = tmp
        for idx in range(n):
            i = order[idx]
            s = 1.0 - 2.0 * x[i]
            delta = s * (lin[i] + f[i])
            if delta <= 0.0 or np.random.random() < math.exp(-delta / temp):
                x[i] = 1 - x[i]
                obj += delta
                for j in range(n):
                    f[j] += s * qsym[i, j]
                if obj < best_obj:
                    best_obj = obj
                    best_x = x.copy()
        temp *= ratio
    return best_x, best_obj


def _restart_seed(seed: int, restart: int) -> int:
    return int(np.random.SeedSequence([seed, restart]).generate_state(1)[0])


def solve_sa(problem: QuboProblem, config: SaConfig | None = None) -> SolverResult:
    """Simulated annealing with single-bit-flip proposals.

    Deterministic given the config seed; each restart runs an independent
    chain seeded from (seed, restart index), and the best objective wins with
    ties broken by the lowest restart index.
    """
    cfg = config if config is not None else SaConfig()
    sweeps, t0, tf = cfg.resolve(problem)
    lin = problem.linear
    qsym = problem.symmetric_matrix()
    best_x: np.ndarray | None = None
    best_obj = math.inf
    for r in range(cfg.restarts):
        x, obj = _sa_restart(lin, qsym, sweeps, t0, tf, _restart_seed(cfg.seed, r))
        if obj < best_obj:
            best_obj = obj
            best_x = x
    assert best_x is not None
    objective = evaluate(problem, best_x)
    return SolverResult(
        assignment=best_x.astype(np.uint8),
        objective=objective,
        evaluations=cfg.restarts * sweeps * problem.n,
        seed=cfg.seed,
    )


def _solve_auto(problem: QuboProblem, config: SaConfig | None, cap: int) -> SolverResult:
    if problem.n <= cap:
        return solve_exact(problem, cap=cap)
    return solve_sa(problem, config)


Backend = Callable[[QuboProblem, SaConfig | None], SolverResult]

_BACKENDS: dict[str, Backend] = {
    "exact": lambda p, cfg: solve_exact(p),
    "sa": solve_sa,
}


def register_backend(name: str, fn: Backend) -> None:
    """Register an external solver (e.g. an annealer client) under ``name``."""
    if name == "auto":
        raise ValueError("'auto' is a reserved backend name")
    _BACKENDS[name] = fn


def solver_names() -> list[str]:
    return ["auto", *sorted(_BACKENDS)]


def solve(
    problem: QuboProblem,
    backend: str = "auto",
    config: SaConfig | None = None,
    exact_cap: int = EXACT_CAP_DEFAULT,
) -> SolverResult:
    """Dispatch to a named backend; "auto" uses exact up to the cap, else SA."""
    if backend == "auto":
        return _solve_auto(problem, config, exact_cap)
    try:
        fn = _BACKENDS[backend]
    except KeyError:
        raise ValueError(
            f"unknown solver backend {backend!r}; known: {', '.join(solver_names())}"
        ) from None
    return fn(problem, config)


def qubo_to_json(problem: QuboProblem) -> str:
    """Serialize for interop with external solvers."""
    payload = {
        "n": problem.n,
        "linear": problem.linear.tolist(),
        "quadratic": [[i, j, v] for (i, j), v in sorted(problem.quadratic.items())],
    }
    return json.dumps(payload)


def qubo_from_json(text: str) -> QuboProblem:
    payload = json.loads(text)
    linear = np.asarray(payload["linear"], dtype=np.float64)
    if linear.size != payload["n"]:
        raise ValueError("linear length does not match n")
    quadratic = {(int(i), int(j)): float(v) for i, j, v in payload["quadratic"]}
    return QuboProblem(linear=linear, quadratic=quadratic)
