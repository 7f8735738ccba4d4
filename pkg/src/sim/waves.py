"""Creep wave spawning."""

from __future__ import annotations

from typing import TYPE_CHECKING, List

from loguru import logger

from src.grid.geometry import WorldPos
from src.sim.config import UnitStats, WaveConfig
from src.sim.entities import Team, Unit, UnitKind
from src.sim.events import Event, EventKind

if TYPE_CHECKING:
    from src.sim.world import WorldState

_TAGS = {UnitKind.MELEE_CREEP: "M", UnitKind.RANGED_CREEP: "R"}


def make_creep(world: "WorldState", team: Team, kind: UnitKind, stats: UnitStats, pos: WorldPos) -> Unit:
    world.serial += 1
    return Unit(
        id=f"{team.value}-{_TAGS[kind]}{world.serial:05d}",
        team=team,
        kind=kind,
        pos=pos,
        hp=stats.hp,
        max_hp=stats.hp,
        attack_damage=stats.damage,
        attack_period=stats.attack_period,
        windup=stats.windup,
        range=stats.range,
        move_speed=stats.move_speed,
        aggro_radius=stats.aggro_radius,
        controller="creep",
    )


def spawn_wave(world: "WorldState", cfg: WaveConfig) -> List[Event]:
    """
    Spawn one wave per team at its base: melee first (front), then ranged,
    spaced ``spawn_spacing`` back along the lane, with seeded cross-lane jitter.
    Schedules the next wave ``period`` later.
    """
    now = world.clock
    events: List[Event] = []
    stats = world.config.stats
    m = world.config.map
    lineup = [(UnitKind.MELEE_CREEP, stats.melee_creep)] * cfg.melee_count
    lineup += [(UnitKind.RANGED_CREEP, stats.ranged_creep)] * cfg.ranged_count

    for team in (Team.BLUE, Team.RED):
        base = world.bases[team]
        forward = 1.0 if team is Team.BLUE else -1.0
        for slot, (kind, unit_stats) in enumerate(lineup):
            jitter = float(world.rng.uniform(-cfg.spawn_jitter, cfg.spawn_jitter)) if cfg.spawn_jitter > 0 else 0.0
            pos = WorldPos(base.x - forward * cfg.spawn_spacing * slot, m.lane_y + jitter).clamped(m.width, m.height)
            creep = make_creep(world, team, kind, unit_stats, pos)
            world.units[creep.id] = creep
            events.append(Event(world.tick_index, now, EventKind.SPAWN, creep.id, kind.value))

    world.wave_index += 1
    world.next_spawn += cfg.period
    if lineup:
        logger.debug(f"wave {world.wave_index} spawned at t={now:.2f}s ({len(events)} creeps)")
    return events
