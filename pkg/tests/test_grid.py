import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from src.grid.geometry import (
    CellIndex,
    GridSpec,
    WorldPos,
    cell_center,
    distance,
    distance_field,
    local_distance,
    world_to_cell,
)
from src.grid.heatmap_export import read_pgm, to_gray, write_csv, write_pgm
from src.grid.influence_grid import (
    NEG_INF,
    InfluenceGrid,
    NoCandidateError,
    argmax_in_radius,
    reset,
    strict_local_maxima,
)

LANE = GridSpec.for_map(12000, 3000, 100)


def test_world_to_cell_examples():
    assert world_to_cell(WorldPos(0, 0), LANE) == CellIndex(0, 0)
    assert world_to_cell(WorldPos(250, 50), LANE) == CellIndex(2, 0)
    assert world_to_cell(WorldPos(12000, 3000), LANE) == CellIndex(LANE.cols - 1, LANE.rows - 1)


def test_grid_dimensions_use_ceiling():
    spec = GridSpec.for_map(1050, 300, 100)
    assert (spec.cols, spec.rows) == (11, 3)
    assert spec.delta == 50.0


def test_cell_center_examples():
    assert cell_center(CellIndex(0, 0), LANE) == WorldPos(50, 50)
    assert cell_center(CellIndex(2, 0), LANE) == WorldPos(250, 50)


def test_cell_center_out_of_bounds():
    with pytest.raises(IndexError):
        cell_center(CellIndex(LANE.cols, 0), LANE)


@given(st.integers(0, LANE.cols - 1), st.integers(0, LANE.rows - 1))
def test_center_round_trips_to_its_cell(col, row):
    idx = CellIndex(col, row)
    assert world_to_cell(cell_center(idx, LANE), LANE) == idx


@given(st.floats(0, 12000), st.floats(0, 3000))
def test_position_lies_within_half_cell_of_its_center(x, y):
    c = cell_center(world_to_cell(WorldPos(x, y), LANE), LANE)
    assert abs(c.x - x) <= LANE.delta + 1e-9
    assert abs(c.y - y) <= LANE.delta + 1e-9


def test_distance_examples():
    assert distance(WorldPos(0, 0), WorldPos(0, 0)) == 0
    assert distance(WorldPos(0, 0), WorldPos(3, 4)) == 5
    assert distance(WorldPos(100, 0), WorldPos(0, 100)) == pytest.approx(math.sqrt(20000), abs=1e-9)


@given(st.floats(-1e4, 1e4), st.floats(-1e4, 1e4), st.floats(-1e4, 1e4), st.floats(-1e4, 1e4))
def test_distance_is_symmetric(ax, ay, bx, by):
    a, b = WorldPos(ax, ay), WorldPos(bx, by)
    assert distance(a, b) == distance(b, a) >= 0


def test_reset_clears_values_and_sentinels():
    grid = InfluenceGrid(GridSpec.for_map(500, 300, 100))
    grid.values[:] = 7.0
    grid.values[1, 2] = NEG_INF
    assert not reset(grid).values.any()
    assert not reset(grid).values.any()


def test_argmax_uniform_grid_picks_cell_nearest_center():
    spec = GridSpec.for_map(500, 500, 100)
    grid = InfluenceGrid(spec)
    assert argmax_in_radius(grid, WorldPos(260, 240), 200) == CellIndex(2, 2)


def test_argmax_single_high_cell():
    spec = GridSpec.for_map(500, 500, 100)
    grid = InfluenceGrid(spec)
    grid.set_value(CellIndex(3, 1), 10.0)
    assert argmax_in_radius(grid, WorldPos(250, 250), 250) == CellIndex(3, 1)


def test_argmax_equidistant_tie_goes_to_smaller_row_major_index():
    spec = GridSpec.for_map(500, 500, 100)
    grid = InfluenceGrid(spec)
    grid.set_value(CellIndex(1, 2), 7.0)
    grid.set_value(CellIndex(3, 2), 7.0)
    assert argmax_in_radius(grid, WorldPos(250, 250), 150) == CellIndex(1, 2)


def test_argmax_never_prefers_sentinel_over_finite():
    spec = GridSpec.for_map(500, 500, 100)
    grid = InfluenceGrid(spec)
    grid.values[:] = NEG_INF
    grid.set_value(CellIndex(4, 4), -775.0)
    assert argmax_in_radius(grid, WorldPos(250, 250), 1000) == CellIndex(4, 4)


def test_argmax_requires_a_candidate():
    grid = InfluenceGrid(GridSpec.for_map(500, 500, 100))
    with pytest.raises(NoCandidateError):
        argmax_in_radius(grid, WorldPos(0, 0), 10)
    with pytest.raises(ValueError):
        argmax_in_radius(grid, WorldPos(0, 0), 0)


@given(st.lists(st.integers(-3, 3), min_size=25, max_size=25), st.floats(60, 400))
def test_argmax_matches_exhaustive_scan(cells, radius):
    spec = GridSpec.for_map(500, 500, 100)
    grid = InfluenceGrid(spec, np.array(cells, dtype=float))
    center = WorldPos(210, 290)
    best = None
    for idx in spec.iter_cells():
        d = distance(cell_center(idx, spec), center)
        if d > radius:
            continue
        key = (-grid.value_at(idx), d, spec.flat_index(idx))
        if best is None or key < best[0]:
            best = (key, idx)
    assert argmax_in_radius(grid, center, radius) == best[1]


@given(st.floats(-500, 12500), st.floats(-500, 3500), st.floats(1, 1500))
def test_local_distance_window_covers_the_disc(x, y, radius):
    pos = WorldPos(x, y)
    window, local = local_distance(LANE, pos, radius)
    full = distance_field(LANE, pos)
    inside = np.zeros(full.shape, dtype=bool)
    inside[window] = True
    assert not ((full <= radius) & ~inside).any()
    assert np.array_equal(local, full[window])


def test_strict_local_maxima_interior_only():
    values = np.zeros((4, 5))
    values[1, 2] = 3.0
    values[0, 0] = 9.0
    values[2, 3] = 1.0
    mask = strict_local_maxima(values)
    assert mask[1, 2]
    assert not mask[0, 0]
    assert mask.sum() == 1
    assert not strict_local_maxima(values, exclude=mask).any()


def test_strict_local_maxima_ignores_plateaus():
    values = np.zeros((4, 4))
    values[1, 1] = values[1, 2] = 5.0
    assert not strict_local_maxima(values).any()


def test_csv_export_writes_rows_and_sentinel(tmp_path):
    grid = InfluenceGrid(GridSpec.for_map(300, 200, 100))
    grid.values[0, 1] = NEG_INF
    grid.values[1, 2] = 2.5
    path = write_csv(grid, str(tmp_path / "g.csv"))
    lines = open(path, encoding="utf-8").read().splitlines()
    assert lines == ["0.0,-inf,0.0", "0.0,0.0,2.5"]


def test_gray_scale_rules():
    values = np.array([[NEG_INF, -10.0], [0.0, 10.0]])
    gray = to_gray(values)
    assert gray.tolist() == [[0, 0], [128, 255]]
    assert (to_gray(np.full((2, 2), 4.0)) == 128).all()


def test_pgm_export_reads_back(tmp_path):
    grid = InfluenceGrid(GridSpec.for_map(300, 200, 100))
    grid.values[:] = [[0.0, 1.0, 2.0], [3.0, 4.0, NEG_INF]]
    path = write_pgm(grid, str(tmp_path / "g.pgm"))
    assert open(path, "rb").read().startswith(b"P5\n3 2\n255\n")
    back = read_pgm(path)
    assert back.shape == (2, 3)
    assert back[0, 0] == 0 and back[1, 1] == 255 and back[1, 2] == 0
