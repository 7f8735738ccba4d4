"""
Heatmap Export

Writes influence grids as CSV (one line per grid row) and as binary 8-bit
PGM images for quick inspection.
"""

import csv
import os
from typing import List

import numpy as np

from src.grid.influence_grid import InfluenceGrid


def format_weight(value: float) -> str:
    if np.isneginf(value):
        return "-inf"
    return repr(float(value))


def grid_rows(grid: InfluenceGrid) -> List[List[str]]:
    return [[format_weight(v) for v in row] for row in grid.values]


def write_csv(grid: InfluenceGrid, path: str) -> str:
    """
    Write the grid as CSV, row 0 first.

    Args:
        grid: Grid to export
        path: Output file path

    Returns:
        The path written
    """
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as f:
        writer = csv.writer(f, lineterminator="\n")
        writer.writerows(grid_rows(grid))
    return path


def to_gray(values: np.ndarray) -> np.ndarray:
    """
    Rescale weights to 0..255.

    Finite weights are mapped affinely from [min, max] onto [0, 255]; the
    -inf sentinel maps to 0; a grid whose finite weights are all equal maps
    them to 128.
    """
    finite = np.isfinite(values)
    out = np.zeros(values.shape, dtype=np.uint8)
    if not finite.any():
        return out

    lo = float(values[finite].min())
    hi = float(values[finite].max())
    if hi == lo:
        out[finite] = 128
        return out

    scaled = (values[finite] - lo) / (hi - lo) * 255.0
    out[finite] = np.clip(np.rint(scaled), 0, 255).astype(np.uint8)
    return out


def write_pgm(grid: InfluenceGrid, path: str) -> str:
    """Write the grid as a binary (P5) PGM, row 0 at the top."""
    os.makedirs(os.path.dirname(os.path.abspath(path)), exist_ok=True)
    gray = to_gray(grid.values)
    header = f"P5\n{grid.spec.cols} {grid.spec.rows}\n255\n".encode("ascii")
    with open(path, "wb") as f:
        f.write(header)
        f.write(gray.tobytes(order="C"))
    return path


def read_pgm(path: str) -> np.ndarray:
    """Read back a P5 PGM written by :func:`write_pgm`."""
    with open(path, "rb") as f:
        data = f.read()
    magic, dims, maxval, body = data.split(b"\n", 3)
    if magic != b"P5" or maxval != b"255":
        raise ValueError(f"not an 8-bit P5 PGM: {path}")
    cols, rows = (int(v) for v in dims.split())
    return np.frombuffer(body, dtype=np.uint8, count=rows * cols).reshape(rows, cols)
