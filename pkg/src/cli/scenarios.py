"""
Heatmap Scenarios

Canned feature snapshots on the default lane map, each isolating one
feature of the influence model.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Dict, Tuple

import msgspec

from src.grid.geometry import GridSpec, WorldPos
from src.influence.features import (
    AgentView,
    FeatureView,
    InfluenceTuning,
    NexusView,
    TowerContext,
    TowerView,
    UnitView,
)
from src.sim.config import MatchConfig
from src.sim.entities import TowerState


@dataclass(frozen=True)
class Scenario:
    name: str
    view: FeatureView
    tuning: InfluenceTuning
    # "max", or "both" to also write the summing variant
    variants: str = "max"


class UnknownScenarioError(KeyError):
    pass


def _agent(cfg: MatchConfig, x: float = 2000.0) -> AgentView:
    hero = cfg.stats.hero
    return AgentView(
        id="Blue-H0",
        pos=WorldPos(x, cfg.map.lane_y),
        hp=hero.hp,
        max_hp=hero.hp,
        hero_range=cfg.agent.tuning.hero_range_override or hero.range,
        attack_range=hero.range,
        attack_damage=hero.damage,
        move_speed=hero.move_speed,
    )


def _creep(cfg: MatchConfig, cid: str, x: float, hp_share: float) -> UnitView:
    stats = cfg.stats.melee_creep
    return UnitView(id=cid, pos=WorldPos(x, cfg.map.lane_y), hp=stats.hp * hp_share, max_hp=stats.hp,
                    attack_damage=stats.damage, range=stats.range, move_speed=stats.move_speed)


def _tower(cfg: MatchConfig, tid: str, x: float, ctx: TowerContext) -> TowerView:
    t = cfg.stats.tower
    return TowerView(id=tid, pos=WorldPos(x, cfg.map.lane_y), hp=t.hp, range=t.range, damage=t.damage,
                     attack_period=t.attack_period, ctx=ctx)


def _base(cfg: MatchConfig) -> WorldPos:
    return WorldPos(cfg.map.blue_base_x, cfg.map.lane_y)


def enemy_tower_passive(cfg: MatchConfig) -> Scenario:
    tower = _tower(cfg, "Red-T0", cfg.map.red_towers[0], TowerContext(TowerState.PASSIVE_AGGRO, 4))
    view = FeatureView(agent=_agent(cfg), agent_base=_base(cfg), enemy_towers=(tower,))
    return Scenario("enemy-tower-passive", view, cfg.agent.tuning)


def enemy_creeps(cfg: MatchConfig) -> Scenario:
    creeps = (
        _creep(cfg, "Red-M1", 5600.0, 0.1),
        _creep(cfg, "Red-M2", 6300.0, 0.5),
        _creep(cfg, "Red-M3", 7000.0, 1.0),
    )
    view = FeatureView(agent=_agent(cfg), agent_base=_base(cfg), enemy_creeps=creeps)
    return Scenario("enemy-creeps", view, cfg.agent.tuning)


def max_vs_sum(cfg: MatchConfig) -> Scenario:
    """Two full-HP creeps 700 apart with overlapping near zones, falloff off."""
    creeps = (_creep(cfg, "Red-M1", 5600.0, 1.0), _creep(cfg, "Red-M2", 6300.0, 1.0))
    view = FeatureView(agent=_agent(cfg), agent_base=_base(cfg), enemy_creeps=creeps)
    tuning = msgspec.structs.replace(cfg.agent.tuning, enemy_creep_falloff_enabled=False)
    return Scenario("max-vs-sum", view, tuning, variants="both")


def full_compose(cfg: MatchConfig) -> Scenario:
    lane = cfg.map.lane_y
    ally_tower = _tower(cfg, "Blue-T1", cfg.map.blue_towers[-1], TowerContext(TowerState.IDLE, 0))
    enemy_tower = _tower(cfg, "Red-T0", cfg.map.red_towers[0], TowerContext(TowerState.PASSIVE_AGGRO, 3))
    ally_creeps = tuple(
        UnitView(id=f"Blue-M{i}", pos=WorldPos(6000.0 + 60 * i, lane), hp=450.0, max_hp=450.0)
        for i in range(3)
    )
    bruiser = UnitView(id="Red-H0", pos=WorldPos(7600.0, lane), hp=600.0, max_hp=600.0, range=150.0,
                       effective_range=400.0, tactical_value=350.0)
    view = FeatureView(
        agent=_agent(cfg, 5200.0),
        agent_base=_base(cfg),
        enemy_creeps=(_creep(cfg, "Red-M1", 6500.0, 0.3), _creep(cfg, "Red-R2", 6700.0, 0.8)),
        ally_creeps=ally_creeps,
        enemy_towers=(enemy_tower,),
        ally_towers=(ally_tower,),
        enemy_heroes=(bruiser,),
    )
    return Scenario("full-compose", view, cfg.agent.tuning)


def crowded_lane(cfg: MatchConfig) -> Scenario:
    """Thirty features around the river: a full creep clash, every tower, five heroes."""
    lane = cfg.map.lane_y
    m = cfg.map
    enemy_creeps = tuple(
        _creep(cfg, f"Red-M{i}", 6100.0 + 70 * i, 0.1 + 0.06 * i) for i in range(14)
    )
    ally_creeps = tuple(
        UnitView(id=f"Blue-M{i}", pos=WorldPos(5600.0 + 80 * i, lane), hp=450.0, max_hp=450.0)
        for i in range(6)
    )
    enemy_towers = tuple(
        _tower(cfg, f"Red-T{i}", x, TowerContext(TowerState.PASSIVE_AGGRO, 3 if i == 0 else 0))
        for i, x in enumerate(m.red_towers)
    )
    ally_towers = tuple(
        _tower(cfg, f"Blue-T{i}", x, TowerContext(TowerState.IDLE, 0)) for i, x in enumerate(m.blue_towers)
    )
    enemy_heroes = tuple(
        UnitView(id=f"Red-H{i}", pos=WorldPos(7300.0 + 250 * i, lane + 300 * (i - 1)), hp=600.0, max_hp=600.0,
                 range=150.0, effective_range=400.0, tactical_value=350.0)
        for i in range(3)
    )
    ally_heroes = tuple(
        UnitView(id=f"Blue-H{i + 1}", pos=WorldPos(4800.0, lane + 400 * (1 - 2 * i)), hp=600.0, max_hp=600.0,
                 range=550.0, effective_range=600.0, tactical_value=400.0)
        for i in range(2)
    )
    view = FeatureView(
        agent=_agent(cfg, 5200.0),
        agent_base=_base(cfg),
        enemy_creeps=enemy_creeps,
        ally_creeps=ally_creeps,
        enemy_towers=enemy_towers,
        ally_towers=ally_towers,
        enemy_heroes=enemy_heroes,
        ally_heroes=ally_heroes,
        enemy_nexus=NexusView("Red-Nexus", WorldPos(m.red_base_x, lane), cfg.stats.nexus_hp),
    )
    return Scenario("crowded-lane", view, cfg.agent.tuning)


def feature_count(view: FeatureView) -> int:
    groups = (view.enemy_creeps, view.ally_creeps, view.enemy_towers, view.ally_towers,
              view.enemy_heroes, view.ally_heroes)
    return sum(len(g) for g in groups) + (view.enemy_nexus is not None)


def empty(cfg: MatchConfig) -> Scenario:
    return Scenario("empty", FeatureView(agent=_agent(cfg), agent_base=_base(cfg)), cfg.agent.tuning)


SCENARIOS: Dict[str, Callable[[MatchConfig], Scenario]] = {
    "enemy-tower-passive": enemy_tower_passive,
    "enemy-creeps": enemy_creeps,
    "max-vs-sum": max_vs_sum,
    "full-compose": full_compose,
    "crowded-lane": crowded_lane,
    "empty": empty,
}


def build_scenario(name: str, cfg: MatchConfig) -> Tuple[Scenario, GridSpec]:
    if name not in SCENARIOS:
        raise UnknownScenarioError(f"unknown scenario '{name}'; valid: {', '.join(SCENARIOS)}")
    spec = GridSpec.for_map(cfg.map.width, cfg.map.height, cfg.grid.resolution)
    return SCENARIOS[name](cfg), spec
