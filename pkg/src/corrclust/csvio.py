"""Plain numeric CSV parsing with line-accurate error reporting."""

from __future__ import annotations

import csv
from pathlib import Path

import numpy as np


def read_numeric_csv(path, has_header: bool = False) -> tuple[np.ndarray, list[str] | None]:
    """Read a rectangular numeric CSV.

    Returns (matrix, header_names); header_names is None unless ``has_header``.
    Raises ValueError naming the offending 1-based line for ragged rows or
    non-numeric cells.
    """
    path = Path(path)
    header: list[str] | None = None
    rows: list[list[float]] = []
    width: int | None = None
    with path.open(newline="") as fh:
        reader = csv.reader(fh)
        for lineno, raw in enumerate(reader, start=1):
            if not raw or all(cell.strip() == "" for cell in raw):
                continue
            if has_header and header is None:
                header = [cell.strip() for cell in raw]
                width = len(header)
                continue
            if width is None:
                width = len(raw)
            elif len(raw) != width:
                raise ValueError(
                    f"{path}: ragged row at line {lineno}: "
                    f"expected {width} columns, found {len(raw)}"
                )
            try:
                rows.append([float(cell) for cell in raw])
            except ValueError:
                bad = next(c for c in raw if not _is_number(c))
                raise ValueError(
                    f"{path}: non-numeric value {bad!r} at line {lineno}"
                ) from None
    if not rows:
        raise ValueError(f"{path}: no data rows found")
    return np.asarray(rows, dtype=np.float64), header


def write_numeric_csv(path, matrix: np.ndarray, header: list[str] | None = None) -> None:
    matrix = np.asarray(matrix, dtype=np.float64)
    path = Path(path)
    with path.open("w", newline="") as fh:
        writer = csv.writer(fh)
        if header is not None:
            writer.writerow(header)
        for row in matrix:
            writer.writerow([repr(float(v)) for v in row])


def _is_number(cell: str) -> bool:
    try:
        float(cell)
    except ValueError:
        return False
    return True
