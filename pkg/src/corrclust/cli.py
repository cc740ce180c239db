"""Batch experiment runner: generate | cluster | benchmark | correlate.

All errors go to stderr with a stable ``E_*`` code prefix and a non-zero
exit code; every command is deterministic given --master-seed (wall-clock
timing fields excepted).
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
import time
from dataclasses import asdict
from pathlib import Path

import numpy as np

from . import __version__
from .bench import (
    BenchmarkPlan,
    CLUSTER_METHODS,
    EXCLUDED_METHODS,
    ExperimentReport,
    benchmark_rows,
    build_report,
    file_digest,
    run_method,
)
from .generate import GenSpec, PROFILES, generate, make_sizes
from .graph import read_weight_csv, write_weight_csv
from .ingest import load_feature_csv, pearson_matrix, sample_rows
from .metrics import gini, size_ratio
from .qubo import SaConfig

BENCH_COLUMNS = ("profile", "k", "seed", "method", "nmi", "modularity", "runtime")


class CliError(Exception):
    def __init__(self, code: str, message: str, exit_code: int = 1):
        super().__init__(message)
        self.code = code
        self.exit_code = exit_code


def _usage(message: str) -> CliError:
    return CliError("E_USAGE", message, exit_code=2)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="corrclust",
        description="Correlation clustering of signed weighted graphs.",
    )
    parser.add_argument("--version", action="version", version=f"corrclust {__version__}")
    parser.add_argument("--master-seed", type=int, default=0, help="root seed for all runs")
    parser.add_argument("--jobs", type=int, default=1, help="worker processes for sweeps")
    parser.add_argument("--out", type=str, default=None, help="output file (or prefix)")
    parser.add_argument("--format", choices=("json", "csv"), default=None)
    sub = parser.add_subparsers(dest="command", required=True)

    g = sub.add_parser("generate", help="write a synthetic signed graph + ground truth")
    g.add_argument("--n", type=int, required=True)
    g.add_argument("--k", type=int, required=True)
    g.add_argument("--profile", choices=PROFILES, default="uniform")
    g.add_argument("--sizes", type=str, default=None, help="explicit sizes, e.g. 3,3,4")
    g.add_argument("--intra", type=str, default="0.2,1.0", help="positive weight range lo,hi")
    g.add_argument("--inter", type=str, default="-1.0,-0.2", help="negative weight range lo,hi")
    g.add_argument("--noise", type=float, default=0.0, help="sign-flip probability")
    g.add_argument("--density", type=float, default=1.0, help="edge keep probability")
    g.add_argument("--seed", type=int, default=None, help="instance seed (default: master seed)")

    c = sub.add_parser("cluster", help="cluster a weight-matrix CSV and report metrics")
    c.add_argument("graph", type=str, help="dense weight matrix CSV")
    c.add_argument("--method", required=True, type=str)
    c.add_argument("--k", type=int, default=None)
    c.add_argument("--select-k", type=str, default=None, help="k range, e.g. 2-8 or 2,4,6")
    c.add_argument("--truth", type=str, default=None, help="ground-truth labels JSON")
    c.add_argument("--solver", type=str, default="auto")
    c.add_argument("--sweeps", type=int, default=None)
    c.add_argument("--restarts", type=int, default=8)
    c.add_argument("--t-start", type=float, default=None)
    c.add_argument("--t-final", type=float, default=None)
    c.add_argument("--tol", type=float, default=1e-9)
    c.add_argument("--seed", type=int, default=None, help="solver seed (default: master seed)")
    c.add_argument("--trace", action="store_true", help="record per-split trace (gcsq)")
    c.add_argument("--has-header", action="store_true")

    b = sub.add_parser("benchmark", help="sweep profiles x k x seeds over all methods")
    b.add_argument("--n", type=int, default=60)
    b.add_argument("--k-values", type=str, default="5,10,20")
    b.add_argument("--profiles", type=str, default=",".join(PROFILES))
    b.add_argument("--seeds", type=int, default=10)
    b.add_argument("--noise", type=float, default=0.0)
    b.add_argument("--solver", type=str, default="auto")
    b.add_argument("--sa-restarts", type=int, default=8)
    b.add_argument("--sa-sweeps", type=int, default=None)

    r = sub.add_parser("correlate", help="feature CSV -> correlation graph CSV")
    r.add_argument("features", type=str, help="samples x features CSV")
    r.add_argument("--has-header", action="store_true")
    r.add_argument("--drop-constant", action="store_true")
    r.add_argument("--sample-rows", type=float, default=1.0, help="row keep fraction")
    r.add_argument("--seed", type=int, default=None, help="subsample seed (default: master seed)")
    return parser


def _parse_pair(text: str, flag: str) -> tuple[float, float]:
    parts = text.split(",")
    if len(parts) != 2:
        raise _usage(f"{flag} expects lo,hi")
    return float(parts[0]), float(parts[1])


def _parse_int_list(text: str, flag: str) -> list[int]:
    out: list[int] = []
    try:
        for chunk in text.split(","):
            chunk = chunk.strip()
            if not chunk:
                continue
            if "-" in chunk and not chunk.startswith("-"):
                lo, _, hi = chunk.partition("-")
                out.extend(range(int(lo), int(hi) + 1))
            else:
                out.append(int(chunk))
    except ValueError:
        raise _usage(f"{flag}: could not parse {text!r}") from None
    if not out:
        raise _usage(f"{flag} expects integers like 5,10,20 or a range like 2-8")
    return out


def cmd_generate(args) -> int:
    if args.out is None:
        raise _usage("generate requires --out PREFIX")
    seed = args.seed if args.seed is not None else args.master_seed
    profile = args.profile
    if args.sizes is not None:
        profile = tuple(_parse_int_list(args.sizes, "--sizes"))
    spec = GenSpec(
        n=args.n,
        k=args.k,
        profile=profile,
        intra_range=_parse_pair(args.intra, "--intra"),
        inter_range=_parse_pair(args.inter, "--inter"),
        noise_flip_prob=args.noise,
        density=args.density,
        seed=seed,
    )
    graph, truth = generate(spec)
    prefix = Path(args.out)
    write_weight_csv(prefix.with_suffix(".csv"), graph)
    sizes = truth.cluster_sizes()
    sidecar = {
        "labels": truth.labels.tolist(),
        "k": truth.k,
        "spec": _spec_dict(spec),
        "seed": seed,
        "gini": gini(sizes),
        "size_ratio": size_ratio(sizes),
    }
    prefix.with_suffix(".json").write_text(json.dumps(sidecar, sort_keys=True, indent=2) + "\n")
    print(f"wrote {prefix.with_suffix('.csv')} and {prefix.with_suffix('.json')}")
    print(f"gini={sidecar['gini']:.4f} size_ratio={sidecar['size_ratio']:.2f}")
    return 0


def _spec_dict(spec: GenSpec) -> dict:
    d = asdict(spec)
    if not isinstance(d["profile"], str):
        d["profile"] = list(d["profile"])
    d["intra_range"] = list(d["intra_range"])
    d["inter_range"] = list(d["inter_range"])
    return d


def _load_truth(path: str):
    payload = json.loads(Path(path).read_text())
    if isinstance(payload, dict):
        if "labels" not in payload:
            raise ValueError(f"{path}: truth JSON object lacks a 'labels' field")
        return np.asarray(payload["labels"], dtype=np.int64)
    return np.asarray(payload, dtype=np.int64)


def cmd_cluster(args) -> int:
    method = args.method
    known = set(CLUSTER_METHODS) | set(EXCLUDED_METHODS)
    if method not in known:
        raise _usage(f"unknown method {method!r}; known: {', '.join(sorted(known))}")
    if method in EXCLUDED_METHODS:
        raise CliError("E_METHOD", f"method {method!r} is {EXCLUDED_METHODS[method]}")
    if method == "gcsq" and (args.k is not None or args.select_k is not None):
        raise _usage("gcsq discovers the number of clusters; drop --k/--select-k")
    if method != "gcsq" and args.k is None and args.select_k is None:
        raise _usage(f"method {method!r} requires --k or --select-k")
    if args.k is not None and args.select_k is not None:
        raise _usage("pass either --k or --select-k, not both")
    seed = args.seed if args.seed is not None else args.master_seed
    t_total = time.perf_counter()
    t0 = time.perf_counter()
    g = read_weight_csv(args.graph, has_header=args.has_header)
    truth = _load_truth(args.truth) if args.truth else None
    load_s = time.perf_counter() - t0
    select_range = _parse_int_list(args.select_k, "--select-k") if args.select_k else None
    sa = SaConfig(
        sweeps=args.sweeps,
        restarts=args.restarts,
        t_start=args.t_start,
        t_final=args.t_final,
        seed=seed,
    )
    t0 = time.perf_counter()
    partition, params, trace = run_method(
        g,
        method,
        k=args.k,
        select_range=select_range,
        solver=args.solver,
        sa=sa,
        tol=args.tol,
        seed=seed,
        record_trace=args.trace,
    )
    cluster_s = time.perf_counter() - t0
    t0 = time.perf_counter()
    report = build_report(
        g,
        partition,
        method=method,
        params=params,
        dataset={"path": args.graph, "sha256": file_digest(args.graph)},
        timings={},
        truth=truth,
        trace=trace,
    )
    metrics_s = time.perf_counter() - t0
    report.timings.update(
        {
            "load_s": load_s,
            "cluster_s": cluster_s,
            "metrics_s": metrics_s,
            "total_s": time.perf_counter() - t_total,
        }
    )
    text = _render_report(report, args.format or "json")
    _emit(text, args.out)
    return 0


def _render_report(report: ExperimentReport, fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report.to_dict(), sort_keys=True, indent=2) + "\n"
    flat = {"method": report.method, **report.metrics, **report.timings}
    buf = io.StringIO()
    writer = csv.DictWriter(buf, fieldnames=list(flat))
    writer.writeheader()
    writer.writerow(flat)
    return buf.getvalue()


def cmd_benchmark(args) -> int:
    profiles = tuple(p.strip() for p in args.profiles.split(",") if p.strip())
    for p in profiles:
        if p not in PROFILES:
            raise _usage(f"unknown profile {p!r}; known: {', '.join(PROFILES)}")
    plan = BenchmarkPlan(
        n=args.n,
        k_values=tuple(_parse_int_list(args.k_values, "--k-values")),
        profiles=profiles,
        seeds=args.seeds,
        noise=args.noise,
        solver=args.solver,
        master_seed=args.master_seed,
        sa_restarts=args.sa_restarts,
        sa_sweeps=args.sa_sweeps,
    )
    excluded = ", ".join(f"{m} ({why})" for m, why in EXCLUDED_METHODS.items())
    print(f"note: excluded methods: {excluded}", file=sys.stderr)
    rows = benchmark_rows(plan, jobs=args.jobs)
    if (args.format or "csv") == "json":
        text = json.dumps(rows, sort_keys=True, indent=2) + "\n"
    else:
        buf = io.StringIO()
        writer = csv.DictWriter(buf, fieldnames=list(BENCH_COLUMNS))
        writer.writeheader()
        writer.writerows(rows)
        text = buf.getvalue()
    _emit(text, args.out)
    return 0


def cmd_correlate(args) -> int:
    if args.out is None:
        raise _usage("correlate requires --out PATH for the graph CSV")
    seed = args.seed if args.seed is not None else args.master_seed
    features = load_feature_csv(args.features, has_header=args.has_header)
    if args.sample_rows < 1.0:
        features = sample_rows(features, args.sample_rows, seed=seed)
    graph = pearson_matrix(features, drop_constant=args.drop_constant)
    write_weight_csv(args.out, graph)
    print(f"wrote {args.out} ({graph.n} nodes)")
    return 0


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
    else:
        Path(out).write_text(text)


_COMMANDS = {
    "generate": cmd_generate,
    "cluster": cmd_cluster,
    "benchmark": cmd_benchmark,
    "correlate": cmd_correlate,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return _COMMANDS[args.command](args)
    except CliError as exc:
        print(f"{exc.code}: {exc}", file=sys.stderr)
        return exc.exit_code
    except (ValueError, json.JSONDecodeError) as exc:
        print(f"E_DATA: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"E_IO: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
