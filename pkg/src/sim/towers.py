"""
Tower Aggro

Entry bookkeeping and target selection for towers: a tower keeps its
locked target while it stays alive and in range, unless an enemy hero
starts attacking an allied hero inside the tower's range.
"""

from __future__ import annotations

from typing import TYPE_CHECKING, List, Optional, Tuple

from src.grid.geometry import distance
from src.sim.entities import Tower, TowerState, Unit

if TYPE_CHECKING:
    from src.sim.world import WorldState


def is_attacking_hero_of(unit: Unit, team, world: "WorldState", now: float) -> bool:
    """True while ``unit`` (a hero) has an attack on a hero of ``team`` within its last period."""
    if not unit.is_hero or unit.target_id is None:
        return False
    victim = world.units.get(unit.target_id)
    if victim is None or not victim.is_hero or victim.team is not team:
        return False
    return now - unit.last_attack_time <= unit.attack_period


def enemies_in_range(tower: Tower, world: "WorldState") -> List[Tuple[Unit, float]]:
    found = []
    for unit in world.units.values():
        if unit.team is tower.team or not unit.alive:
            continue
        d = distance(unit.pos, tower.pos)
        if d <= tower.range:
            found.append((unit, d))
    return found


def update_entries(tower: Tower, world: "WorldState", now: float) -> List[Tuple[Unit, float]]:
    """Record first-seen times of enemies inside the range; forget those that left."""
    inside = enemies_in_range(tower, world)
    present = {u.id for u, _ in inside}
    for uid in list(tower.entered_at):
        if uid not in present:
            del tower.entered_at[uid]
    for unit, _ in inside:
        tower.entered_at.setdefault(unit.id, now)
    return inside


def tower_select_target(tower: Tower, world: "WorldState", now: Optional[float] = None,
                        inside: Optional[List[Tuple[Unit, float]]] = None) -> Optional[str]:
    """
    Pick the tower's target.

    Priority: an enemy hero attacking an allied hero in range; otherwise the
    current lock if still valid; otherwise the earliest enemy to enter range,
    ties broken creeps first, then nearest, then id.
    """
    if now is None:
        now = world.clock
    if inside is None:
        inside = enemies_in_range(tower, world)
    if not inside:
        return None

    aggressors = [
        (u, d) for u, d in inside
        if is_attacking_hero_of(u, tower.team, world, now)
    ]
    if aggressors:
        if any(u.id == tower.locked_target for u, _ in aggressors):
            return tower.locked_target
        aggressors.sort(key=lambda ud: (ud[1], ud[0].id))
        return aggressors[0][0].id

    if tower.locked_target is not None and any(u.id == tower.locked_target for u, _ in inside):
        return tower.locked_target

    def rank(ud: Tuple[Unit, float]):
        unit, d = ud
        return (tower.entered_at.get(unit.id, now), 0 if unit.kind.is_creep else 1, d, unit.id)

    return min(inside, key=rank)[0].id


def state_for(target: Optional[Unit]) -> TowerState:
    if target is None:
        return TowerState.IDLE
    return TowerState.ACTIVE_AGGRO if target.is_hero else TowerState.PASSIVE_AGGRO
