"""Turn raw feature matrices into signed correlation graphs.

The main path is Pearson correlation between features (columns), producing a
signed graph over the features.  Precomputed correlation matrices can also be
loaded directly.  Native remote-sensing formats are out of scope; export the
pixels x bands table to CSV first.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np

from . import csvio
from .graph import SignedGraph, from_dense
from .validation import check_seed

RANGE_TOL = 1e-6
UNIT_SNAP_TOL = 1e-12


@dataclass(frozen=True)
class FeatureMatrix:
    """m samples by f features, with optional feature names."""

    values: np.ndarray
    names: list[str] | None = None

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.ndim != 2:
            raise ValueError("feature matrix must be 2-dimensional")
        if v.shape[0] < 2:
            raise ValueError("need at least 2 samples")
        if v.shape[1] < 2:
            raise ValueError("need at least 2 features")
        if not np.all(np.isfinite(v)):
            raise ValueError("feature matrix contains NaN or infinite entries")
        if self.names is not None and len(self.names) != v.shape[1]:
            raise ValueError("feature name count does not match column count")
        object.__setattr__(self, "values", v)
        v.setflags(write=False)

    @property
    def n_samples(self) -> int:
        return self.values.shape[0]

    @property
    def n_features(self) -> int:
        return self.values.shape[1]


def pearson_matrix(x: FeatureMatrix, drop_constant: bool = False) -> SignedGraph:
    """Pairwise Pearson correlation between features as a signed graph.

    Uses the two-pass algorithm (means first, then centered products).
    Constant features are an error unless ``drop_constant``, in which case
    they are removed with a warning.  Off-diagonal values within 1e-12 of
    +/-1 snap to exactly +/-1 (duplicated or negated features correlate at
    exactly +/-1 despite rounding in the normalization).
    """
    values = x.values
    centered = values - values.mean(axis=0)
    sq = (centered * centered).sum(axis=0)
    constant = np.flatnonzero(sq == 0.0)
    if constant.size:
        names = _feature_labels(x, constant)
        if not drop_constant:
            raise ValueError(f"constant feature(s) with zero variance: {names}")
        warnings.warn(f"dropping constant feature(s): {names}")
        keep = np.setdiff1d(np.arange(values.shape[1]), constant)
        if keep.size < 2:
            raise ValueError("fewer than 2 non-constant features remain")
        centered = centered[:, keep]
        sq = sq[keep]
    cov = centered.T @ centered
    corr = cov / np.sqrt(np.outer(sq, sq))
    bad = np.abs(corr) > 1.0 + UNIT_SNAP_TOL
    if np.any(bad):
        raise ValueError("correlation exceeded 1 beyond numerical tolerance")
    snap = np.abs(np.abs(corr) - 1.0) <= UNIT_SNAP_TOL
    corr = np.where(snap, np.sign(corr), corr)
    corr = np.clip(corr, -1.0, 1.0)
    np.fill_diagonal(corr, 0.0)
    return from_dense(corr)


def _feature_labels(x: FeatureMatrix, idx: np.ndarray) -> list[str]:
    if x.names is not None:
        return [x.names[i] for i in idx]
    return [str(int(i)) for i in idx]


def load_feature_csv(path, has_header: bool = False) -> FeatureMatrix:
    """Rows are samples, columns are features; header names become feature names."""
    matrix, header = csvio.read_numeric_csv(path, has_header=has_header)
    return FeatureMatrix(values=matrix, names=header)


def load_correlation_csv(path, has_header: bool = False) -> SignedGraph:
    """Load a precomputed correlation matrix; rejects values beyond +/-1 - tol."""
    matrix, _ = csvio.read_numeric_csv(path, has_header=has_header)
    if matrix.shape[0] != matrix.shape[1]:
        raise ValueError(
            f"correlation matrix must be square, got {matrix.shape[0]}x{matrix.shape[1]}"
        )
    if np.any(np.abs(matrix) > 1.0 + RANGE_TOL):
        worst = float(np.abs(matrix).max())
        raise ValueError(f"correlation value {worst} outside [-1, 1] tolerance")
    matrix = np.clip(matrix, -1.0, 1.0)
    return from_dense(matrix)


def sample_rows(x: FeatureMatrix, fraction: float, seed: int = 0) -> FeatureMatrix:
    """Seeded row subsample for very tall matrices (keeps at least 2 rows)."""
    if not 0 < fraction <= 1:
        raise ValueError("fraction must be in (0, 1]")
    check_seed(seed)
    if fraction == 1.0:
        return x
    rng = np.random.default_rng(seed)
    m = x.n_samples
    keep = max(2, int(round(fraction * m)))
    idx = np.sort(rng.choice(m, size=keep, replace=False))
    return FeatureMatrix(values=x.values[idx].copy(), names=x.names)
