"""Correlation clustering of signed weighted graphs.

The toolkit partitions signed graphs (edge weights in [-1, 1], positive =
agreement, negative = disagreement) by recursively bipartitioning the graph,
with each bipartition posed as a QUBO and solved by a pluggable backend
(exact enumeration or simulated annealing).  Classical baselines (DIANA,
average-linkage agglomerative, PAM), a metric suite, a synthetic signed-graph
generator and a correlation-matrix ingestion path round out the package.
"""

from .graph import (
    Bipartition,
    Partition,
    SignedGraph,
    cut_weight,
    from_dense,
    from_edges,
    intra_agreement,
    read_weight_csv,
    subgraph,
    write_weight_csv,
)
from .qubo import (
    QuboProblem,
    SaConfig,
    SolverResult,
    build_bipartition_qubo,
    evaluate,
    qubo_from_json,
    qubo_to_json,
    register_backend,
    solve,
    solve_exact,
    solve_sa,
)
from .divisive import ClusterConfig, SplitStep, cluster, partition_to_json, split_once
from .baselines import (
    agglomerative,
    diana,
    pam,
    select_k,
    silhouette_score,
    to_dissimilarity,
)
from .metrics import MetricReport, gini, modularity, nmi, report, size_ratio
from .generate import GenSpec, generate, make_sizes
from .ingest import (
    FeatureMatrix,
    load_correlation_csv,
    load_feature_csv,
    pearson_matrix,
    sample_rows,
)
from .estimators import (
    AverageLinkageClustering,
    DianaClustering,
    GCSQClustering,
    PamClustering,
)

__version__ = "0.1.0"

__all__ = [
    "SignedGraph",
    "Partition",
    "Bipartition",
    "from_dense",
    "from_edges",
    "subgraph",
    "cut_weight",
    "intra_agreement",
    "read_weight_csv",
    "write_weight_csv",
    "QuboProblem",
    "SolverResult",
    "SaConfig",
    "build_bipartition_qubo",
    "evaluate",
    "solve",
    "solve_exact",
    "solve_sa",
    "register_backend",
    "qubo_to_json",
    "qubo_from_json",
    "ClusterConfig",
    "SplitStep",
    "cluster",
    "split_once",
    "partition_to_json",
    "to_dissimilarity",
    "diana",
    "agglomerative",
    "pam",
    "silhouette_score",
    "select_k",
    "MetricReport",
    "nmi",
    "modularity",
    "gini",
    "size_ratio",
    "report",
    "GenSpec",
    "make_sizes",
    "generate",
    "FeatureMatrix",
    "pearson_matrix",
    "load_feature_csv",
    "load_correlation_csv",
    "sample_rows",
    "GCSQClustering",
    "DianaClustering",
    "AverageLinkageClustering",
    "PamClustering",
    "__version__",
]
