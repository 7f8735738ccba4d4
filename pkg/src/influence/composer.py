"""
Influence Composer

Builds the tactical influence grid from a feature snapshot in three passes:
creeps (max-combined), then towers (overwrite), then heroes (enemy plateau
overwrite, ally additive). Also offers the naive summing composition used to
show the local maximum it creates.

Every feature only touches the cells inside its own footprint, so each
field is evaluated on the bounding window of that footprint.
"""

from __future__ import annotations

from typing import Optional, Tuple

import numpy as np

from src.grid.geometry import GridSpec, Window, WorldPos, distance, distance_field, local_distance
from src.grid.influence_grid import NEG_INF, InfluenceGrid, reset
from src.influence.equations import phi, resolve_epsilon
from src.influence.features import FeatureView, InfluenceTuning, TowerView

# (window, weights) with NaN where the feature writes nothing
Field = Tuple[Window, np.ndarray]


def _tau_field(unit_pos: WorldPos, base: WorldPos, base_dist: np.ndarray, floor: float) -> np.ndarray:
    return distance(unit_pos, base) / np.maximum(base_dist, floor)


def creep_field(spec: GridSpec, creep, view: FeatureView, tuning: InfluenceTuning,
                base_dist: np.ndarray) -> Field:
    """One enemy creep's weights over its window."""
    h_r = view.agent.hero_range
    reach = h_r + tuning.falloff_extent if tuning.enemy_creep_falloff_enabled else h_r
    window, d = local_distance(spec, creep.pos, reach)
    delta = spec.delta
    p = phi(creep, tuning.phi_enabled)
    t = _tau_field(creep.pos, view.agent_base, base_dist[window], tuning.tau_denominator_floor)

    near = d < h_r - delta
    ring = ~near & (d <= h_r)
    out = np.where(near, d, np.nan)
    out = np.where(ring, t * (d + tuning.creep_bonus - p), out)
    if tuning.enemy_creep_falloff_enabled:
        tail = (d > h_r) & (d <= reach)
        out = np.where(tail, np.maximum(0.0, t * (h_r + tuning.creep_bonus - p) - (d - h_r)), out)
    return window, out


def _favorable_field(d: np.ndarray, t: np.ndarray, hero_range: float, radius: float, delta: float) -> np.ndarray:
    footprint = d <= radius
    inner = footprint & (d < hero_range - delta)
    ring = footprint & ~inner & (d <= hero_range)
    outer = footprint & (d > hero_range)
    out = np.where(inner, d, np.nan)
    out = np.where(ring, t * d, out)
    return np.where(outer, radius - d, out)


def enemy_tower_field(spec: GridSpec, tower: TowerView, view: FeatureView, tuning: InfluenceTuning,
                      base_dist: np.ndarray) -> Field:
    window, d = local_distance(spec, tower.pos, tower.range)
    if tower.ctx.favorable:
        t = _tau_field(tower.pos, view.agent_base, base_dist[window], tuning.tau_denominator_floor)
        return window, _favorable_field(d, t, view.agent.hero_range, tower.range, spec.delta)

    eps = resolve_epsilon(tower, view.agent, tuning)
    out = np.where(d <= tower.range, -tower.range, np.nan)
    return window, np.where(d <= min(eps, tower.range), NEG_INF, out)


def nexus_field(spec: GridSpec, view: FeatureView, tuning: InfluenceTuning, base_dist: np.ndarray) -> Field:
    nexus = view.enemy_nexus
    window, d = local_distance(spec, nexus.pos, tuning.nexus_radius)
    t = _tau_field(nexus.pos, view.agent_base, base_dist[window], tuning.tau_denominator_floor)
    return window, _favorable_field(d, t, view.agent.hero_range, tuning.nexus_radius, spec.delta)


def ally_tower_field(spec: GridSpec, tower: TowerView, margin: float) -> Field:
    window, d = local_distance(spec, tower.pos, tower.range)
    inside = (d <= tower.range) & (d > margin)
    return window, np.where(inside, tower.range - d, np.nan)


def _creep_pass(values: np.ndarray, enemy_mask: np.ndarray, spec: GridSpec, view: FeatureView,
                tuning: InfluenceTuning, base_dist: np.ndarray, combine: str) -> None:
    for creep in view.enemy_creeps:
        window, w = creep_field(spec, creep, view, tuning, base_dist)
        if combine == "max":
            np.fmax(values[window], w, out=values[window])
        else:
            values[window] += np.nan_to_num(w, nan=0.0)
        enemy_mask[window] |= ~np.isnan(w)


def _tower_pass(values: np.ndarray, enemy_mask: np.ndarray, spec: GridSpec, view: FeatureView,
                tuning: InfluenceTuning, base_dist: np.ndarray) -> None:
    ally_fields = [ally_tower_field(spec, t, tuning.ally_tower_margin) for t in view.ally_towers]
    ally_fp = np.zeros(values.shape, dtype=bool)
    for tower in view.ally_towers:
        window, d = local_distance(spec, tower.pos, tower.range)
        ally_fp[window] |= d <= tower.range

    enemy_layer = np.full(values.shape, np.inf)
    for tower in view.enemy_towers:
        window, w = enemy_tower_field(spec, tower, view, tuning, base_dist)
        np.fmin(enemy_layer[window], w, out=enemy_layer[window])
    if view.enemy_nexus is not None and view.enemy_nexus.vulnerable:
        window, w = nexus_field(spec, view, tuning, base_dist)
        np.fmin(enemy_layer[window], w, out=enemy_layer[window])
    enemy_fp = enemy_layer != np.inf

    # creep values inside any tower footprint are discarded
    footprint = ally_fp | enemy_fp
    values[footprint] = 0.0
    enemy_mask[footprint] = False

    for window, w in ally_fields:
        np.fmax(values[window], w, out=values[window])

    only_enemy = enemy_fp & ~ally_fp
    values[only_enemy] = enemy_layer[only_enemy]
    both = enemy_fp & ally_fp
    values[both] = np.minimum(values[both], enemy_layer[both])
    enemy_mask[enemy_fp] = True


def _hero_pass(values: np.ndarray, enemy_mask: np.ndarray, spec: GridSpec, view: FeatureView) -> None:
    for hero in view.enemy_heroes:
        window, d = local_distance(spec, hero.pos, hero.effective_range)
        local = values[window]
        plateau = (d <= hero.effective_range) & (local != NEG_INF)
        local[plateau] = -hero.tactical_value
        enemy_mask[window] |= plateau
    for hero in view.ally_heroes:
        window, d = local_distance(spec, hero.pos, hero.effective_range)
        local = values[window]
        plateau = (d <= hero.effective_range) & (local != NEG_INF)
        local[plateau] += hero.tactical_value


def compose_with_attribution(view: FeatureView, spec: GridSpec, tuning: InfluenceTuning,
                             grid: Optional[InfluenceGrid] = None,
                             creep_combine: str = "max") -> Tuple[InfluenceGrid, np.ndarray]:
    """
    Compose the grid and report which cells ended up holding an enemy feature's value.

    Args:
        view: Feature snapshot
        spec: Grid layout
        tuning: Equation constants
        grid: Optional grid to reuse; it is reset first
        creep_combine: "max" (default) or "sum" for the naive variant

    Returns:
        (grid, enemy_mask) where enemy_mask is a (rows, cols) bool array
    """
    if grid is None or grid.spec != spec:
        grid = InfluenceGrid(spec)
    reset(grid)
    values = grid.values
    enemy_mask = np.zeros(values.shape, dtype=bool)
    base_dist = distance_field(spec, view.agent_base)

    _creep_pass(values, enemy_mask, spec, view, tuning, base_dist, creep_combine)
    _tower_pass(values, enemy_mask, spec, view, tuning, base_dist)
    _hero_pass(values, enemy_mask, spec, view)
    return grid, enemy_mask


def compose(view: FeatureView, spec: GridSpec, tuning: InfluenceTuning,
            grid: Optional[InfluenceGrid] = None) -> InfluenceGrid:
    """Three-pass composition: creeps by max, towers overwrite, heroes last."""
    return compose_with_attribution(view, spec, tuning, grid)[0]


def compose_sum(view: FeatureView, spec: GridSpec, tuning: InfluenceTuning) -> InfluenceGrid:
    """Same passes, but creep fields are summed instead of max-combined."""
    return compose_with_attribution(view, spec, tuning, creep_combine="sum")[0]
