"""
Sensors

Turns the simulator state into the FeatureView snapshot one agent
decides from. No fog of war: every entity is visible.
"""

from __future__ import annotations

from typing import Mapping, Optional

from src.influence.features import (
    AgentView,
    FeatureView,
    InfluenceTuning,
    NexusView,
    TowerContext,
    TowerView,
    UnitView,
)
from src.agent.profiles import HeroProfile
from src.sim.entities import Tower, Unit
from src.sim.world import WorldState


def _unit_view(unit: Unit, profile: Optional[HeroProfile] = None, now: float = 0.0) -> UnitView:
    target = unit.target_id
    # heroes aim at their standing order, else at a recent attack target
    if unit.is_hero and now - unit.last_attack_time > unit.attack_period:
        target = None
    if unit.is_hero and unit.order_target is not None:
        target = unit.order_target
    return UnitView(
        id=unit.id,
        pos=unit.pos,
        hp=unit.hp,
        max_hp=unit.max_hp,
        attack_damage=unit.attack_damage,
        range=unit.range,
        move_speed=unit.move_speed,
        target_id=target,
        effective_range=max(profile.effective_range, unit.range) if profile else unit.range,
        tactical_value=profile.tactical_value if profile else 0.0,
        windup=unit.windup,
        ready_at=unit.last_attack_time + unit.attack_period,
        winding=unit.pending_target is not None,
        aggro_radius=unit.aggro_radius,
    )


def _tower_view(tower: Tower, ctx: TowerContext) -> TowerView:
    return TowerView(
        id=tower.id,
        pos=tower.pos,
        hp=tower.hp,
        range=tower.range,
        damage=tower.damage,
        attack_period=tower.attack_period,
        ctx=ctx,
    )


def observe(world: WorldState, hero_id: str, profiles: Mapping[str, HeroProfile],
            tuning: InfluenceTuning) -> FeatureView:
    """Snapshot of ``world`` from the perspective of hero ``hero_id``."""
    hero = world.hero(hero_id)
    if hero is None:
        raise KeyError(f"unknown hero {hero_id}")
    now = world.clock
    team, enemy = hero.team, hero.team.enemy
    profile = profiles.get(hero.profile)

    agent = AgentView(
        id=hero.id,
        pos=hero.pos,
        hp=hero.hp,
        max_hp=hero.max_hp,
        hero_range=tuning.hero_range_override or hero.range,
        attack_range=hero.range,
        attack_damage=hero.attack_damage,
        move_speed=hero.move_speed,
        tactical_value=profile.tactical_value if profile else 0.0,
        attack_period=hero.attack_period,
        last_attack_time=hero.last_attack_time,
        attack_lock_until=hero.attack_lock_until,
        windup=hero.windup,
    )

    ally_creeps = sorted(world.creeps(team), key=lambda u: u.id)
    shield = [(c.id, c.pos) for c in ally_creeps]
    enemy_towers = tuple(
        _tower_view(t, TowerContext.from_tower(t, hero.id, shield))
        for t in sorted(world.team_towers(enemy), key=lambda t: t.id)
    )
    ally_towers = tuple(
        _tower_view(t, TowerContext.from_tower(t, hero.id, ()))
        for t in sorted(world.team_towers(team), key=lambda t: t.id)
    )

    nexus = world.nexus[enemy]
    enemy_nexus = None
    if nexus.alive:
        enemy_nexus = NexusView(nexus.id, nexus.pos, nexus.hp, world.nexus_vulnerable(enemy))

    return FeatureView(
        agent=agent,
        agent_base=world.bases[team],
        enemy_creeps=tuple(_unit_view(c) for c in sorted(world.creeps(enemy), key=lambda u: u.id)),
        ally_creeps=tuple(_unit_view(c) for c in ally_creeps),
        enemy_towers=enemy_towers,
        ally_towers=ally_towers,
        enemy_heroes=tuple(
            _unit_view(h, profiles.get(h.profile), now)
            for h in sorted(world.heroes(enemy), key=lambda u: u.id)
        ),
        ally_heroes=tuple(
            _unit_view(h, profiles.get(h.profile), now)
            for h in sorted(world.heroes(team), key=lambda u: u.id) if h.id != hero.id
        ),
        enemy_nexus=enemy_nexus,
        enemy_base=world.bases[enemy],
    )
