"""Input validation helpers shared by the functional core and the estimators."""

from __future__ import annotations

import numpy as np


def check_square_matrix(x, name: str = "matrix") -> np.ndarray:
    """Coerce to a square 2-D float64 array with finite entries."""
    arr = np.asarray(x, dtype=np.float64)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be 2-dimensional, got shape {arr.shape}")
    if arr.shape[0] != arr.shape[1]:
        raise ValueError(f"{name} must be square, got shape {arr.shape}")
    if arr.shape[0] == 0:
        raise ValueError(f"{name} must have at least one row")
    if not np.all(np.isfinite(arr)):
        raise ValueError(f"{name} contains NaN or infinite entries")
    return arr


def check_labels(labels, n: int | None = None) -> np.ndarray:
    """Coerce cluster labels to a 1-D int64 array, optionally of length ``n``."""
    arr = np.asarray(labels)
    if arr.ndim != 1:
        raise ValueError(f"labels must be 1-dimensional, got shape {arr.shape}")
    if arr.size == 0:
        raise ValueError("labels must be non-empty")
    if n is not None and arr.size != n:
        raise ValueError(f"labels length {arr.size} does not match expected {n}")
    out = arr.astype(np.int64, copy=True)
    if not np.array_equal(out, arr):
        raise ValueError("labels must be integers")
    if out.min() < 0:
        raise ValueError("labels must be non-negative")
    return out


def check_mask(mask, n: int) -> np.ndarray:
    """Coerce a bipartition mask to a length-``n`` uint8 array of 0/1."""
    arr = np.asarray(mask)
    if arr.ndim != 1 or arr.size != n:
        raise ValueError(f"mask must have length {n}, got shape {arr.shape}")
    out = arr.astype(np.uint8)
    if not np.all((out == 0) | (out == 1)):
        raise ValueError("mask entries must be 0 or 1")
    return out


def check_seed(seed) -> int:
    if not isinstance(seed, (int, np.integer)):
        raise TypeError(f"seed must be an integer, got {type(seed).__name__}")
    return int(seed)
