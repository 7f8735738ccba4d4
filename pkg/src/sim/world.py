"""
Lane World

World state of a single-lane match and the fixed-timestep update:
spawn waves, towers, creeps, heroes, damage resolution, victory check.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np
from loguru import logger

from src.grid.geometry import WorldPos, distance
from src.sim import combat
from src.sim.commands import Command, CommandKind
from src.sim.config import MatchConfig, UnitStats
from src.sim.entities import Nexus, Team, Tower, Unit, UnitKind
from src.sim.events import Event, EventKind, StatsLedger
from src.sim.towers import is_attacking_hero_of, state_for, tower_select_target, update_entries
from src.sim.waves import spawn_wave

Entity = Union[Unit, Tower, Nexus]


@dataclass
class WorldState:
    config: MatchConfig
    bases: Dict[Team, WorldPos]
    lane_waypoints: Dict[Team, List[WorldPos]]
    rng_seed: int
    rng: np.random.Generator
    units: Dict[str, Unit] = field(default_factory=dict)
    towers: Dict[str, Tower] = field(default_factory=dict)
    nexus: Dict[Team, Nexus] = field(default_factory=dict)
    respawning: Dict[str, Unit] = field(default_factory=dict)
    tick_index: int = 0
    next_spawn: float = 0.0
    wave_index: int = 0
    serial: int = 0
    winner: Optional[Team] = None
    ledger: StatsLedger = field(default_factory=StatsLedger)
    boot_events: List[Event] = field(default_factory=list)

    @property
    def clock(self) -> float:
        return self.tick_index * self.config.dt

    @property
    def finished(self) -> bool:
        return self.winner is not None or self.clock >= self.config.time_cap - combat.TIME_EPS

    def entity(self, entity_id: Optional[str]) -> Optional[Entity]:
        if entity_id is None:
            return None
        found = self.units.get(entity_id) or self.towers.get(entity_id)
        if found is not None:
            return found
        for nexus in self.nexus.values():
            if nexus.id == entity_id:
                return nexus
        return None

    def hero(self, hero_id: str) -> Optional[Unit]:
        unit = self.units.get(hero_id)
        if unit is None:
            unit = self.respawning.get(hero_id)
        return unit

    def heroes(self, team: Optional[Team] = None) -> List[Unit]:
        return [u for u in self.units.values() if u.is_hero and (team is None or u.team is team)]

    def creeps(self, team: Optional[Team] = None) -> List[Unit]:
        return [u for u in self.units.values() if u.kind.is_creep and (team is None or u.team is team)]

    def team_towers(self, team: Team) -> List[Tower]:
        return [t for t in self.towers.values() if t.team is team and t.alive]

    def nexus_vulnerable(self, team: Team) -> bool:
        return not self.team_towers(team)

    def structures(self, team: Team) -> List[Union[Tower, Nexus]]:
        """Attackable structures of ``team``."""
        found: List[Union[Tower, Nexus]] = list(self.team_towers(team))
        nexus = self.nexus.get(team)
        if nexus is not None and nexus.alive and self.nexus_vulnerable(team):
            found.append(nexus)
        return found


def _nearest(pos: WorldPos, candidates: Sequence[Entity], radius: float) -> Optional[Entity]:
    """Nearest candidate within ``radius``; the first one in order wins a tie."""
    best: Optional[Entity] = None
    best_d = float("inf")
    for c in candidates:
        d = distance(pos, c.pos)
        if d < best_d:
            best, best_d = c, d
    if best is None or best_d > radius:
        return None
    return best


def make_hero(hero_id: str, team: Team, stats: UnitStats, pos: WorldPos, controller: str, profile: str) -> Unit:
    return Unit(
        id=hero_id,
        team=team,
        kind=UnitKind.HERO,
        pos=pos,
        hp=stats.hp,
        max_hp=stats.hp,
        attack_damage=stats.damage,
        attack_period=stats.attack_period,
        windup=stats.windup,
        range=stats.range,
        move_speed=stats.move_speed,
        controller=controller,
        profile=profile,
    )


def build_world(config: MatchConfig, seed: Optional[int] = None,
                profiles: Optional[Mapping[str, object]] = None) -> WorldState:
    """
    Lay out bases, towers and heroes for ``config``.

    Hero stats come from the slot override, else the profile's ``stats``
    entry in ``profiles``, else the config's hero defaults.
    """
    m = config.map
    seed = config.seed if seed is None else seed
    bases = {
        Team.BLUE: WorldPos(m.blue_base_x, m.lane_y),
        Team.RED: WorldPos(m.red_base_x, m.lane_y),
    }
    tower_xs = {Team.BLUE: m.blue_towers, Team.RED: m.red_towers}
    world = WorldState(
        config=config,
        bases=bases,
        lane_waypoints={},
        rng_seed=seed,
        rng=np.random.default_rng(seed),
        next_spawn=config.wave.first_spawn,
    )

    tower_stats = config.stats.tower
    for team in (Team.BLUE, Team.RED):
        for i, x in enumerate(tower_xs[team]):
            tower = Tower(
                id=f"{team.value}-T{i}",
                team=team,
                pos=WorldPos(x, m.lane_y),
                hp=tower_stats.hp,
                max_hp=tower_stats.hp,
                damage=tower_stats.damage,
                attack_period=tower_stats.attack_period,
                range=tower_stats.range,
            )
            world.towers[tower.id] = tower
        world.nexus[team] = Nexus(f"{team.value}-Nexus", team, bases[team], config.stats.nexus_hp,
                                  config.stats.nexus_hp)

    for team in (Team.BLUE, Team.RED):
        enemy = team.enemy
        home = bases[team]
        stops = sorted(tower_xs[enemy], key=lambda x: abs(x - home.x))
        world.lane_waypoints[team] = [WorldPos(x, m.lane_y) for x in stops] + [bases[enemy]]

    counters = {Team.BLUE: 0, Team.RED: 0}
    for slot in config.heroes:
        team = Team(slot.team)
        stats = slot.stats
        if stats is None and profiles is not None:
            stats = getattr(profiles.get(slot.profile), "stats", None)
        if stats is None:
            stats = config.stats.hero
        base = bases[team]
        pos = WorldPos(base.x if slot.spawn_x is None else slot.spawn_x,
                       base.y if slot.spawn_y is None else slot.spawn_y).clamped(m.width, m.height)
        hero = make_hero(f"{team.value}-H{counters[team]}", team, stats, pos, slot.controller, slot.profile)
        counters[team] += 1
        world.units[hero.id] = hero
        world.boot_events.append(Event(0, 0.0, EventKind.SPAWN, hero.id, UnitKind.HERO.value))

    logger.debug(f"world built: seed={seed}, {len(world.towers)} towers, {len(world.heroes())} heroes")
    return world


def check_victory(world: WorldState) -> Optional[Team]:
    """The team whose opponent's Nexus is destroyed, if any."""
    for team in (Team.BLUE, Team.RED):
        if not world.nexus[team.enemy].alive:
            return team
    return None


def _tower_phase(world: WorldState) -> List[Event]:
    now, tick = world.clock, world.tick_index
    events: List[Event] = []
    for tower_id in sorted(world.towers):
        tower = world.towers[tower_id]
        if not tower.alive:
            continue
        inside = update_entries(tower, world, now)
        target_id = tower_select_target(tower, world, now, inside)
        if target_id != tower.locked_target:
            tower.locked_target = target_id
            events.append(Event(tick, now, EventKind.AGGRO_CHANGE, tower.id, target_id))
        tower.state = state_for(world.units.get(target_id) if target_id else None)
        if target_id is not None and tower.pending_target is None and tower.attack_ready(now):
            events.append(combat.start_attack(world, tower, target_id))
    return events


# per team: (heroes, creeps, structures), each sorted by id
Pools = Tuple[List[Unit], List[Unit], List[Entity]]


def _target_pools(world: WorldState, team: Team) -> Pools:
    return (
        sorted(world.heroes(team), key=lambda u: u.id),
        sorted(world.creeps(team), key=lambda u: u.id),
        sorted(world.structures(team), key=lambda s: s.id),
    )


def _creep_target(world: WorldState, creep: Unit, now: float, pools: Optional[Pools] = None) -> Optional[Entity]:
    enemy = creep.team.enemy
    radius = creep.aggro_radius
    heroes, creeps, structures = pools if pools is not None else _target_pools(world, enemy)

    callers = [h for h in heroes if is_attacking_hero_of(h, creep.team, world, now)]
    caller = _nearest(creep.pos, callers, radius)
    if caller is not None:
        return caller

    current = world.entity(creep.target_id)
    if (current is not None and not (isinstance(current, Unit) and current.is_hero)
            and combat.attackable(world, creep.team, current)
            and distance(creep.pos, current.pos) <= radius):
        return current

    for pool in (creeps, structures, heroes):
        found = _nearest(creep.pos, pool, radius)
        if found is not None:
            return found
    return None


def _approach(unit: Unit, target_pos: WorldPos, stop_at: float, dt: float) -> float:
    """Move toward ``target_pos`` until within ``stop_at``; returns distance moved."""
    gap = distance(unit.pos, target_pos) - stop_at
    if gap <= 0:
        return 0.0
    step = min(unit.move_speed * dt, gap + 1.0)
    before = unit.pos
    unit.pos = unit.pos.toward(target_pos, step)
    return distance(before, unit.pos)


def _march(world: WorldState, creep: Unit, dt: float) -> None:
    waypoints = world.lane_waypoints[creep.team]
    while creep.waypoint_index < len(waypoints) - 1 and distance(creep.pos, waypoints[creep.waypoint_index]) < 1e-6:
        creep.waypoint_index += 1
    creep.pos = creep.pos.toward(waypoints[creep.waypoint_index], creep.move_speed * dt)


def _creep_phase(world: WorldState, dt: float) -> List[Event]:
    now = world.clock
    events: List[Event] = []
    m = world.config.map
    pools = {team: _target_pools(world, team) for team in (Team.BLUE, Team.RED)}
    for creep in sorted(world.creeps(), key=lambda u: u.id):
        if not creep.alive or creep.pending_target is not None:
            continue
        target = _creep_target(world, creep, now, pools[creep.team.enemy])
        if target is None:
            creep.target_id = None
            _march(world, creep, dt)
        else:
            creep.target_id = target.id
            if combat.in_range(creep, target):
                if creep.attack_ready(now):
                    events.append(combat.start_attack(world, creep, target.id))
            else:
                _approach(creep, target.pos, creep.range, dt)
        creep.pos = creep.pos.clamped(m.width, m.height)
    return events


def chaser_command(world: WorldState, hero: Unit) -> Command:
    """Scripted pursuer: attack the nearest enemy hero, walking to it when out of range."""
    prey = _nearest(hero.pos, sorted(world.heroes(hero.team.enemy), key=lambda u: u.id), float("inf"))
    if prey is None:
        return Command.hold()
    return Command.attack(prey.id)


def _respawn(world: WorldState) -> List[Event]:
    now, tick = world.clock, world.tick_index
    events: List[Event] = []
    for hero_id in sorted(world.respawning):
        hero = world.respawning[hero_id]
        if hero.respawn_at is not None and now + combat.TIME_EPS >= hero.respawn_at:
            del world.respawning[hero_id]
            hero.hp = hero.max_hp
            hero.pos = world.bases[hero.team]
            hero.respawn_at = None
            hero.pending_target = None
            hero.target_id = None
            hero.order_target = None
            hero.attack_lock_until = float("-inf")
            world.units[hero_id] = hero
            events.append(Event(tick, now, EventKind.RESPAWN, hero_id))
    return events


def _apply_command(world: WorldState, hero: Unit, cmd: Command, dt: float) -> List[Event]:
    now, tick = world.clock, world.tick_index
    m = world.config.map
    events: List[Event] = []

    if cmd.kind is CommandKind.HOLD:
        return events

    if cmd.kind is CommandKind.MOVE:
        hero.order_target = None
        if hero.pending_target is not None:
            missed = combat.cancel_attack(hero)
            events.append(Event(tick, now, EventKind.MISS, hero.id, missed))
        dest = cmd.pos.clamped(m.width, m.height)
        before = hero.pos
        hero.pos = hero.pos.toward(dest, hero.move_speed * dt)
        moved = distance(before, hero.pos)
        if moved > 0:
            events.append(Event(tick, now, EventKind.MOVE, hero.id, None, moved))
        return events

    target = world.entity(cmd.target)
    if not combat.attackable(world, hero.team, target):
        events.append(Event(tick, now, EventKind.REJECT, hero.id, cmd.target))
        return events
    hero.order_target = target.id
    if hero.pending_target is not None:
        return events
    if combat.in_range(hero, target):
        if hero.attack_ready(now):
            events.append(combat.start_attack(world, hero, target.id))
        return events
    before = hero.pos
    _approach(hero, target.pos, hero.range, dt)
    hero.pos = hero.pos.clamped(m.width, m.height)
    moved = distance(before, hero.pos)
    if moved > 0:
        events.append(Event(tick, now, EventKind.MOVE, hero.id, None, moved))
    return events


def _hero_phase(world: WorldState, commands: Mapping[str, Command], dt: float) -> List[Event]:
    events = _respawn(world)
    for hero in sorted(world.heroes(), key=lambda u: u.id):
        if hero.controller == "chaser":
            cmd = chaser_command(world, hero)
        elif hero.controller == "idle":
            cmd = Command.hold()
        else:
            cmd = commands.get(hero.id, Command.hold())
        events.extend(_apply_command(world, hero, cmd, dt))
    return events


def _landing_order(world: WorldState) -> List[Union[Unit, Tower]]:
    towers = [world.towers[k] for k in sorted(world.towers)]
    creeps = sorted(world.creeps(), key=lambda u: u.id)
    heroes = sorted(world.heroes(), key=lambda u: u.id)
    return [*towers, *creeps, *heroes]


def _damage_phase(world: WorldState) -> List[Event]:
    now = world.clock
    events: List[Event] = []
    for attacker in _landing_order(world):
        if not attacker.alive:
            if attacker.pending_target is not None:
                combat.cancel_attack(attacker)
            continue
        if combat.landing_due(attacker, now):
            events.extend(combat.resolve_attack(world, attacker))

    respawn = world.config.hero_respawn
    for unit_id in [k for k, u in world.units.items() if not u.alive]:
        unit = world.units.pop(unit_id)
        if unit.is_hero:
            unit.respawn_at = now + respawn
            unit.pending_target = None
            world.respawning[unit_id] = unit
    for tower_id in [k for k, t in world.towers.items() if not t.alive]:
        del world.towers[tower_id]
    return events


def step(world: WorldState, commands: Optional[Mapping[str, Command]] = None,
         dt: Optional[float] = None) -> Tuple[WorldState, List[Event]]:
    """
    Advance the world by one tick, in place.

    Phases: (1) waves due, (2) towers, (3) creeps, (4) hero commands,
    (5) pending hits land (towers, creeps, heroes, then id) and the dead are
    removed, (6) victory check. Returns the world and this tick's events.
    """
    if dt is not None and abs(dt - world.config.dt) > 1e-12:
        raise ValueError(f"dt must equal the configured tick {world.config.dt}, got {dt}")
    dt = world.config.dt
    commands = commands or {}

    events: List[Event] = list(world.boot_events)
    world.boot_events.clear()

    while world.clock + combat.TIME_EPS >= world.next_spawn:
        events.extend(spawn_wave(world, world.config.wave))
    events.extend(_tower_phase(world))
    events.extend(_creep_phase(world, dt))
    events.extend(_hero_phase(world, commands, dt))
    events.extend(_damage_phase(world))

    winner = check_victory(world)
    if winner is not None and world.winner is None:
        world.winner = winner
        logger.info(f"{winner.value} wins at t={world.clock:.2f}s")

    for event in events:
        world.ledger.apply(event)
    world.tick_index += 1
    return world, events
