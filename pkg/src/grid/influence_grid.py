"""
Influence Grid Container

Dense row-major grid of influence weights with the reset and best-point
queries used by the navigation layer.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

import numpy as np

from src.grid.geometry import CellIndex, GridSpec, WorldPos, local_distance

# "never stand here" weight; below every finite weight and absorbing under max
NEG_INF = float("-inf")


class NoCandidateError(ValueError):
    """No cell centre lies inside the requested search radius."""


@dataclass
class InfluenceGrid:
    spec: GridSpec
    values: Optional[np.ndarray] = None

    def __post_init__(self):
        shape = (self.spec.rows, self.spec.cols)
        if self.values is None:
            self.values = np.zeros(shape, dtype=np.float64)
        else:
            self.values = np.asarray(self.values, dtype=np.float64).reshape(shape)

    def __len__(self) -> int:
        return self.values.size

    def value_at(self, idx: CellIndex) -> float:
        return float(self.values[idx.row, idx.col])

    def set_value(self, idx: CellIndex, value: float) -> None:
        self.values[idx.row, idx.col] = value

    def flat(self) -> np.ndarray:
        """Row-major view of the weights."""
        return self.values.reshape(-1)


def reset(grid: InfluenceGrid) -> InfluenceGrid:
    """Zero every cell in place (sentinels included) and return the grid."""
    grid.values.fill(0.0)
    return grid


def argmax_in_radius(grid: InfluenceGrid, center: WorldPos, radius: float,
                     mask: Optional[np.ndarray] = None) -> CellIndex:
    """
    Best cell whose centre lies within ``radius`` of ``center``.

    Ties on value go to the cell nearest ``center``, then to the smallest
    row-major index. ``mask`` optionally narrows the candidate set further.

    Raises:
        NoCandidateError: no cell centre inside the radius
    """
    if radius <= 0:
        raise ValueError(f"radius must be > 0, got {radius}")

    window, dist = local_distance(grid.spec, center, radius)
    inside = dist <= radius
    if mask is not None:
        inside &= mask[window]
    rows, cols = np.nonzero(inside)
    if rows.size == 0:
        raise NoCandidateError(f"no cell centre within {radius} of ({center.x}, {center.y})")

    rows = rows + window[0].start
    cols = cols + window[1].start
    flat = rows * grid.spec.cols + cols
    values = grid.values[rows, cols]
    # lexsort: last key is primary
    order = np.lexsort((flat, dist[inside], -values))
    best = int(order[0])
    return CellIndex(int(cols[best]), int(rows[best]))


def strict_local_maxima(values: np.ndarray, exclude: Optional[np.ndarray] = None) -> np.ndarray:
    """
    Boolean mask of interior cells strictly greater than all 8 neighbours.

    Border cells are never reported; ``exclude`` removes further cells.
    """
    rows, cols = values.shape
    result = np.zeros_like(values, dtype=bool)
    if rows < 3 or cols < 3:
        return result

    core = values[1:-1, 1:-1]
    is_max = np.ones_like(core, dtype=bool)
    for dr in (-1, 0, 1):
        for dc in (-1, 0, 1):
            if dr == 0 and dc == 0:
                continue
            neighbour = values[1 + dr:rows - 1 + dr, 1 + dc:cols - 1 + dc]
            is_max &= core > neighbour
    result[1:-1, 1:-1] = is_max
    if exclude is not None:
        result &= ~exclude
    return result
