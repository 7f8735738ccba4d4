"""
Navigation Layer

Best-point selection on the influence grid: the highest-valued cell within
one decision horizon of movement, with an escape toward the own base when
every reachable cell is forbidden. Also the safety checks that override it
(forbidden tower radius, creep aggro), the last-hit step-in and the orbit
used while a chaser is on the agent.
"""

from __future__ import annotations

import math
from typing import Optional, Tuple

import numpy as np

from src.grid.geometry import (
    CellIndex,
    GridSpec,
    WorldPos,
    cell_center,
    center_coords,
    distance,
    local_distance,
    world_to_cell,
)
from src.grid.influence_grid import NEG_INF, InfluenceGrid, argmax_in_radius
from src.influence.equations import resolve_epsilon
from src.influence.features import ALPHA_SHIELD, FeatureView, InfluenceTuning

DEFAULT_HORIZON = 1.0
# orbit stays this far inside the shorter map half-extent
KITE_EDGE = 400.0
SPIN_FLIP = 0.5
PULL_CAP = 0.5
# early warning before a creep can pick the agent
AGGRO_MARGIN = 75.0
LAST_HIT_REACH = 100.0
LAST_HIT_SLACK = 40.0
# shield creeps past the minimum before the agent stands inside a tower's epsilon
SHIELD_SPARE = 2


def search_radius(view: FeatureView, horizon: float = DEFAULT_HORIZON) -> float:
    return view.agent.move_speed * horizon


def escape_cell(grid: InfluenceGrid, center: WorldPos, radius: float, base: WorldPos) -> CellIndex:
    """Candidate cell nearest ``base``; row-major index breaks ties."""
    spec = grid.spec
    window, dist = local_distance(spec, center, radius)
    rows, cols = np.nonzero(dist <= radius)
    rows = rows + window[0].start
    cols = cols + window[1].start
    cx, cy = center_coords(spec)
    dx = cx[rows, cols] - base.x
    dy = cy[rows, cols] - base.y
    order = np.lexsort((rows * spec.cols + cols, np.sqrt(dx * dx + dy * dy)))
    best = int(order[0])
    return CellIndex(int(cols[best]), int(rows[best]))


def navigate_cell(view: FeatureView, grid: InfluenceGrid, horizon: float = DEFAULT_HORIZON) -> CellIndex:
    radius = search_radius(view, horizon)
    best = argmax_in_radius(grid, view.agent.pos, radius)
    if grid.value_at(best) == NEG_INF:
        return escape_cell(grid, view.agent.pos, radius, view.agent_base)
    return best


def navigate(view: FeatureView, grid: InfluenceGrid, horizon: float = DEFAULT_HORIZON) -> WorldPos:
    """Centre of the best reachable cell for the agent in ``view``."""
    return cell_center(navigate_cell(view, grid, horizon), grid.spec)


def rally_point(view: FeatureView, grid: InfluenceGrid, enemy_mask: np.ndarray,
                chosen: CellIndex) -> Optional[WorldPos]:
    """
    Lane presence: when the chosen cell carries no enemy influence, walk up
    to attack range behind the front allied creep.

    Returns None when there is no creep ahead, the agent is already past
    the rally point, or the rally cell has a negative value.
    """
    if enemy_mask[chosen.row, chosen.col] or not view.ally_creeps or view.enemy_base is None:
        return None
    agent = view.agent
    forward = 1.0 if view.enemy_base.x >= view.agent_base.x else -1.0
    front = max(view.ally_creeps, key=lambda c: (forward * c.pos.x, c.id))
    target_x = front.pos.x - forward * agent.hero_range
    if forward * (target_x - agent.pos.x) <= 0:
        return None
    spec = grid.spec
    cell = world_to_cell(WorldPos(target_x, front.pos.y), spec)
    if grid.value_at(cell) < 0:
        return None
    dest = cell_center(cell, spec)
    if not path_clear(grid, agent.pos, dest):
        return None
    return dest


def path_clear(grid: InfluenceGrid, start: WorldPos, end: WorldPos) -> bool:
    """False when the straight walk from ``start`` to ``end`` crosses a forbidden cell."""
    spec = grid.spec
    steps = max(1, math.ceil(distance(start, end) / spec.delta))
    for i in range(1, steps + 1):
        f = i / steps
        at = WorldPos(start.x + (end.x - start.x) * f, start.y + (end.y - start.y) * f)
        if grid.value_at(world_to_cell(at, spec)) == NEG_INF:
            return False
    return True


def in_forbidden_zone(view: FeatureView, spec: GridSpec, tuning: InfluenceTuning, spare: int = 0) -> bool:
    """
    True when the agent's cell lies inside the epsilon radius of a hostile enemy tower.

    With ``spare`` above zero, a favorable tower whose creep shield is
    fewer than ``spare`` creeps past the minimum counts as hostile too.
    """
    here = cell_center(world_to_cell(view.agent.pos, spec), spec)
    for tower in view.enemy_towers:
        if tower.ctx.favorable and tower.ctx.alpha >= ALPHA_SHIELD + spare:
            continue
        d = distance(here, tower.pos)
        if d <= tower.range and d <= resolve_epsilon(tower, view.agent, tuning):
            return True
    return False


def creep_pressure(view: FeatureView, margin: float = AGGRO_MARGIN) -> bool:
    """
    True when an enemy creep is on the agent, or is about to pick it: the
    agent is inside the creep's aggro radius plus ``margin`` and no allied
    creep or tower sits inside that radius to draw it instead.
    """
    agent = view.agent
    for creep in view.enemy_creeps:
        if creep.target_id == agent.id:
            return True
        radius = creep.aggro_radius
        if radius <= 0 or distance(creep.pos, agent.pos) > radius + margin:
            continue
        drawn = any(distance(creep.pos, c.pos) <= radius for c in view.ally_creeps) or any(
            distance(creep.pos, t.pos) <= radius for t in view.ally_towers
        )
        if not drawn:
            return True
    return False


def retreat_point(grid: InfluenceGrid, view: FeatureView, horizon: float = DEFAULT_HORIZON) -> WorldPos:
    """One horizon of movement straight back toward the own base."""
    radius = search_radius(view, horizon)
    return cell_center(escape_cell(grid, view.agent.pos, radius, view.agent_base), grid.spec)


def last_hit_approach(view: FeatureView, grid: InfluenceGrid, reach: float = LAST_HIT_REACH) -> Optional[WorldPos]:
    """
    Where to step for a last hit just outside attack range.

    Only applies when no killable creep is already in range. The stand-in
    point sits ``LAST_HIT_SLACK`` inside range on the line to the weakest
    killable creep within ``reach`` beyond the range, and must be a
    non-negative cell with a clear path.
    """
    agent = view.agent
    rng = agent.attack_range
    killable = [c for c in view.enemy_creeps if c.hp <= agent.attack_damage]
    if not killable or any(distance(agent.pos, c.pos) <= rng for c in killable):
        return None
    near = [c for c in killable if distance(agent.pos, c.pos) <= rng + reach]
    if not near:
        return None
    prey = min(near, key=lambda c: (c.hp, c.id))
    d = distance(agent.pos, prey.pos)
    stand = prey.pos.toward(agent.pos, rng - LAST_HIT_SLACK) if d > 0 else prey.pos
    spec = grid.spec
    stand = stand.clamped(spec.origin.x + spec.width, spec.origin.y + spec.height)
    if grid.value_at(world_to_cell(stand, spec)) < 0 or not path_clear(grid, agent.pos, stand):
        return None
    return stand


def kite_point(agent: WorldPos, threat: WorldPos, spec: GridSpec, step: float,
               spin: int = 0) -> Tuple[WorldPos, int]:
    """
    Where to walk while a chaser is on the agent: straight away from it near
    the arena centre, blending into an orbit of the centre further out so
    the chase never pins the agent to a map edge.

    Returns the destination and the orbit direction (+1 counter-clockwise,
    -1 clockwise). ``spin`` only flips when keeping it would walk into the
    chaser, and the step never closes distance on it.
    """
    away_x, away_y = agent.x - threat.x, agent.y - threat.y
    norm = math.hypot(away_x, away_y)
    away_x, away_y = (away_x / norm, away_y / norm) if norm > 0 else (1.0, 0.0)

    cx, cy = spec.origin.x + spec.width / 2, spec.origin.y + spec.height / 2
    ring = max(min(spec.width, spec.height) / 2 - KITE_EDGE, step)
    rx, ry = agent.x - cx, agent.y - cy
    rho = math.hypot(rx, ry)
    if rho < 1e-6:
        dx, dy = away_x, away_y
    else:
        ux, uy = rx / rho, ry / rho
        along = -uy * away_x + ux * away_y
        if spin == 0 or along * spin < -SPIN_FLIP:
            spin = 1 if along >= 0 else -1
        pull = min(max((ring - rho) / ring, -PULL_CAP), PULL_CAP)
        orbit_x, orbit_y = -uy * spin + pull * ux, ux * spin + pull * uy
        blend = min(1.0, rho / ring)
        dx = (1 - blend) * away_x + blend * orbit_x
        dy = (1 - blend) * away_y + blend * orbit_y
    closing = dx * away_x + dy * away_y
    if closing < 0:
        dx, dy = dx - closing * away_x, dy - closing * away_y
    if math.hypot(dx, dy) < 1e-9:
        dx, dy = away_x, away_y
    length = math.hypot(dx, dy)
    dest = WorldPos(agent.x + step * dx / length, agent.y + step * dy / length)
    return dest.clamped(spec.origin.x + spec.width, spec.origin.y + spec.height), spin
