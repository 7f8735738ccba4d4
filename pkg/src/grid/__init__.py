from .geometry import (
    CellIndex,
    GridSpec,
    WorldPos,
    cell_center,
    center_coords,
    distance,
    distance_field,
    grid_window,
    local_distance,
    world_to_cell,
)
from .influence_grid import (
    NEG_INF,
    InfluenceGrid,
    NoCandidateError,
    argmax_in_radius,
    reset,
    strict_local_maxima,
)

__all__ = [
    'CellIndex',
    'GridSpec',
    'WorldPos',
    'cell_center',
    'center_coords',
    'distance',
    'distance_field',
    'grid_window',
    'local_distance',
    'world_to_cell',
    'NEG_INF',
    'InfluenceGrid',
    'NoCandidateError',
    'argmax_in_radius',
    'reset',
    'strict_local_maxima',
]
