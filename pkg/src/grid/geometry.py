"""
Map Geometry and Grid Indexing

World positions, the grid layout laid over the lane map, and the
conversions between world coordinates and grid cells.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Tuple

import numpy as np


@dataclass(frozen=True, slots=True)
class WorldPos:
    """A point on the map, in game units."""

    x: float
    y: float

    def clamped(self, width: float, height: float) -> "WorldPos":
        """Return this position clamped into [0, width] x [0, height]."""
        return WorldPos(min(max(self.x, 0.0), width), min(max(self.y, 0.0), height))

    def toward(self, other: "WorldPos", step: float) -> "WorldPos":
        """Move at most ``step`` units in a straight line toward ``other``."""
        dx = other.x - self.x
        dy = other.y - self.y
        d = math.sqrt(dx * dx + dy * dy)
        if d <= step or d == 0.0:
            return other
        return WorldPos(self.x + dx / d * step, self.y + dy / d * step)


@dataclass(frozen=True, slots=True)
class CellIndex:
    col: int
    row: int


@dataclass(frozen=True, slots=True)
class GridSpec:
    """
    Layout of the influence grid over the map.

    cols and rows are derived from the map size (ceil of size / resolution).
    """

    resolution: float
    cols: int
    rows: int
    origin: WorldPos = WorldPos(0.0, 0.0)
    width: float = 0.0
    height: float = 0.0

    @classmethod
    def for_map(cls, width: float, height: float, resolution: float = 100.0,
                origin: WorldPos = WorldPos(0.0, 0.0)) -> "GridSpec":
        if resolution <= 0:
            raise ValueError(f"resolution must be > 0, got {resolution}")
        if width <= 0 or height <= 0:
            raise ValueError(f"map size must be positive, got {width}x{height}")
        return cls(
            resolution=float(resolution),
            cols=int(math.ceil(width / resolution)),
            rows=int(math.ceil(height / resolution)),
            origin=origin,
            width=float(width),
            height=float(height),
        )

    @property
    def delta(self) -> float:
        """Half-resolution correction for discretization error."""
        return self.resolution / 2.0

    @property
    def size(self) -> int:
        return self.cols * self.rows

    def in_bounds(self, idx: CellIndex) -> bool:
        return 0 <= idx.col < self.cols and 0 <= idx.row < self.rows

    def flat_index(self, idx: CellIndex) -> int:
        return idx.row * self.cols + idx.col

    def from_flat(self, flat: int) -> CellIndex:
        return CellIndex(flat % self.cols, flat // self.cols)

    def iter_cells(self) -> Iterator[CellIndex]:
        for row in range(self.rows):
            for col in range(self.cols):
                yield CellIndex(col, row)


def distance(a: WorldPos, b: WorldPos) -> float:
    """Euclidean distance between two world positions."""
    dx = a.x - b.x
    dy = a.y - b.y
    # sqrt of the same expression numpy evaluates, so scalar and grid paths agree bitwise
    return math.sqrt(dx * dx + dy * dy)


def world_to_cell(pos: WorldPos, spec: GridSpec) -> CellIndex:
    """Cell containing ``pos``; positions on or past the far edges clamp to the last cell."""
    col = math.floor((pos.x - spec.origin.x) / spec.resolution)
    row = math.floor((pos.y - spec.origin.y) / spec.resolution)
    return CellIndex(min(max(col, 0), spec.cols - 1), min(max(row, 0), spec.rows - 1))


def cell_center(idx: CellIndex, spec: GridSpec) -> WorldPos:
    if not spec.in_bounds(idx):
        raise IndexError(f"cell {idx} outside {spec.cols}x{spec.rows} grid")
    return WorldPos(
        spec.origin.x + (idx.col + 0.5) * spec.resolution,
        spec.origin.y + (idx.row + 0.5) * spec.resolution,
    )


@lru_cache(maxsize=32)
def center_coords(spec: GridSpec) -> Tuple[np.ndarray, np.ndarray]:
    """Cell-centre x and y coordinate arrays, shaped (rows, cols). Read-only, cached per spec."""
    xs = spec.origin.x + (np.arange(spec.cols, dtype=np.float64) + 0.5) * spec.resolution
    ys = spec.origin.y + (np.arange(spec.rows, dtype=np.float64) + 0.5) * spec.resolution
    cx, cy = np.meshgrid(xs, ys)
    cx.setflags(write=False)
    cy.setflags(write=False)
    return cx, cy


def distance_field(spec: GridSpec, pos: WorldPos) -> np.ndarray:
    """Distance from every cell centre to ``pos``, shaped (rows, cols)."""
    cx, cy = center_coords(spec)
    dx = cx - pos.x
    dy = cy - pos.y
    return np.sqrt(dx * dx + dy * dy)


Window = Tuple[slice, slice]


def grid_window(spec: GridSpec, pos: WorldPos, radius: float) -> Window:
    """Row and column slices covering every cell centre within ``radius`` of ``pos``."""
    res = spec.resolution
    lo_c = math.floor((pos.x - radius - spec.origin.x) / res - 0.5)
    hi_c = math.ceil((pos.x + radius - spec.origin.x) / res - 0.5)
    lo_r = math.floor((pos.y - radius - spec.origin.y) / res - 0.5)
    hi_r = math.ceil((pos.y + radius - spec.origin.y) / res - 0.5)
    cols = slice(max(lo_c, 0), max(min(hi_c + 1, spec.cols), 0))
    rows = slice(max(lo_r, 0), max(min(hi_r + 1, spec.rows), 0))
    return rows, cols


def local_distance(spec: GridSpec, pos: WorldPos, radius: float) -> Tuple[Window, np.ndarray]:
    """``distance_field`` restricted to ``grid_window``; cells past ``radius`` are kept."""
    window = grid_window(spec, pos, radius)
    cx, cy = center_coords(spec)
    dx = cx[window] - pos.x
    dy = cy[window] - pos.y
    return window, np.sqrt(dx * dx + dy * dy)
